/*
 * Copyright (C) 2026 The pmikit Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "pmikit/clock.hpp"

#include <chrono>

namespace pmikit {

der::Time SystemClock::now() const {
    auto now = std::chrono::system_clock::now();
    int64_t secs = std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count();
    return der::Time::from_unix(secs);
}

ClockPtr system_clock() { return std::make_shared<SystemClock>(); }

std::shared_ptr<ManualClock> manual_clock(der::Time t) {
    return std::make_shared<ManualClock>(t);
}

}  // namespace pmikit
