/*
 * Copyright (C) 2026 The pmikit Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef PMIKIT_CLOCK_HPP_
#define PMIKIT_CLOCK_HPP_

#include <memory>
#include <mutex>

#include "pmikit/der.hpp"

namespace pmikit {

// Time Module: an injectable UTC time source. Services take a shared Clock;
// tests inject a fixed or manually advanced one.
class Clock {
public:
    virtual ~Clock() = default;
    virtual der::Time now() const = 0;
};

class SystemClock final : public Clock {
public:
    der::Time now() const override;
};

class ManualClock final : public Clock {
public:
    explicit ManualClock(der::Time t) : time_(t) {}

    der::Time now() const override {
        std::lock_guard<std::mutex> lock(mutex_);
        return time_;
    }

    void set(der::Time t) {
        std::lock_guard<std::mutex> lock(mutex_);
        time_ = t;
    }

private:
    mutable std::mutex mutex_;
    der::Time time_;
};

using ClockPtr = std::shared_ptr<const Clock>;

ClockPtr system_clock();
std::shared_ptr<ManualClock> manual_clock(der::Time t);

}  // namespace pmikit

#endif  // PMIKIT_CLOCK_HPP_
