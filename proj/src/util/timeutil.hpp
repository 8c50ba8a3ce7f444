#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace adtrace::util {

// Wall-clock instants are carried as milliseconds since the Unix epoch, UTC.
using UnixMillis = int64_t;

std::string to_iso8601_ms(UnixMillis ms);
std::optional<UnixMillis> parse_iso8601(std::string_view s);

// Date portion "YYYY-MM-DD" of a UTC instant, used for partition keys.
std::string utc_date(UnixMillis ms);

/// Clock abstraction so pipeline runs can be pinned for reproducible output.
class Clock {
public:
    virtual ~Clock() = default;
    virtual UnixMillis now_ms() = 0;

    static std::shared_ptr<Clock> system();
    // Returns `start_ms` on the first call and advances by `step_ms` per call.
    static std::shared_ptr<Clock> fixed(UnixMillis start_ms, UnixMillis step_ms = 0);
};

}  // namespace adtrace::util
