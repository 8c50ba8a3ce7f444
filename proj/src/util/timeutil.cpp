#include "util/timeutil.hpp"

#include <atomic>
#include <cstdio>

namespace adtrace::util {

namespace {

// Civil-date conversions (Howard Hinnant's algorithms), valid across the
// whole int64 millisecond range we care about.
int64_t days_from_civil(int y, unsigned m, unsigned d) {
    y -= m <= 2;
    const int era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return static_cast<int64_t>(era) * 146097 + static_cast<int64_t>(doe) - 719468;
}

void civil_from_days(int64_t z, int& y, unsigned& m, unsigned& d) {
    z += 719468;
    const int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const int64_t yr = static_cast<int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = doy - (153 * mp + 2) / 5 + 1;
    m = mp + (mp < 10 ? 3 : -9);
    y = static_cast<int>(yr + (m <= 2));
}

int64_t floordiv(int64_t a, int64_t b) {
    int64_t q = a / b;
    if ((a % b) != 0 && ((a < 0) != (b < 0))) --q;
    return q;
}

class SystemClock final : public Clock {
public:
    UnixMillis now_ms() override {
        using namespace std::chrono;
        return duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count();
    }
};

class FixedClock final : public Clock {
public:
    FixedClock(UnixMillis start, UnixMillis step) : next_(start), step_(step) {}
    UnixMillis now_ms() override { return next_.fetch_add(step_); }

private:
    std::atomic<UnixMillis> next_;
    UnixMillis step_;
};

}  // namespace

std::string to_iso8601_ms(UnixMillis ms) {
    int64_t days = floordiv(ms, 86400000);
    int64_t rem = ms - days * 86400000;
    int y;
    unsigned mo, d;
    civil_from_days(days, y, mo, d);
    unsigned hh = static_cast<unsigned>(rem / 3600000);
    rem %= 3600000;
    unsigned mi = static_cast<unsigned>(rem / 60000);
    rem %= 60000;
    unsigned ss = static_cast<unsigned>(rem / 1000);
    unsigned mmm = static_cast<unsigned>(rem % 1000);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02u:%02u:%02u.%03uZ", y, mo, d, hh, mi, ss,
                  mmm);
    return buf;
}

std::optional<UnixMillis> parse_iso8601(std::string_view s) {
    int y = 0;
    unsigned mo = 0, d = 0, hh = 0, mi = 0, ss = 0;
    char sep = 0;
    int consumed = 0;
    std::string str(s);
    if (std::sscanf(str.c_str(), "%4d-%2u-%2u%c%2u:%2u:%2u%n", &y, &mo, &d, &sep, &hh, &mi, &ss,
                    &consumed) != 7)
        return std::nullopt;
    if (sep != 'T' && sep != ' ') return std::nullopt;
    if (mo < 1 || mo > 12 || d < 1 || d > 31 || hh > 23 || mi > 59 || ss > 60) return std::nullopt;
    int64_t millis = 0;
    size_t i = static_cast<size_t>(consumed);
    if (i < str.size() && str[i] == '.') {
        ++i;
        int digits = 0;
        while (i < str.size() && str[i] >= '0' && str[i] <= '9') {
            if (digits < 3) millis = millis * 10 + (str[i] - '0');
            ++digits;
            ++i;
        }
        while (digits < 3) {
            millis *= 10;
            ++digits;
        }
    }
    // Anything left must be a UTC designator.
    if (i < str.size() && !(str.substr(i) == "Z" || str.substr(i) == "+00:00")) return std::nullopt;
    int64_t days = days_from_civil(y, mo, d);
    return days * 86400000 + hh * 3600000LL + mi * 60000LL + ss * 1000LL + millis;
}

std::string utc_date(UnixMillis ms) {
    return to_iso8601_ms(ms).substr(0, 10);
}

std::shared_ptr<Clock> Clock::system() {
    return std::make_shared<SystemClock>();
}

std::shared_ptr<Clock> Clock::fixed(UnixMillis start_ms, UnixMillis step_ms) {
    return std::make_shared<FixedClock>(start_ms, step_ms);
}

}  // namespace adtrace::util
