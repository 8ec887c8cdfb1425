#include "behaviorlab/time.hpp"

#include <charconv>
#include <cstdio>

namespace behaviorlab {

namespace {

std::optional<int> parse_int(std::string_view text) {
    if (text.empty()) {
        return std::nullopt;
    }
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        return std::nullopt;
    }
    return value;
}

std::optional<std::chrono::sys_days> make_day(int y, int m, int d) {
    using namespace std::chrono;
    year_month_day ymd{year{y}, month{static_cast<unsigned>(m)}, day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) {
        return std::nullopt;
    }
    return sys_days{ymd};
}

}  // namespace

std::optional<std::chrono::sys_days> parse_date(std::string_view text) {
    if (text.size() == 10 && text[2] == '/' && text[5] == '/') {
        auto d = parse_int(text.substr(0, 2));
        auto m = parse_int(text.substr(3, 2));
        auto y = parse_int(text.substr(6, 4));
        if (d && m && y) {
            return make_day(*y, *m, *d);
        }
        return std::nullopt;
    }
    if (text.size() == 10 && text[4] == '-' && text[7] == '-') {
        auto y = parse_int(text.substr(0, 4));
        auto m = parse_int(text.substr(5, 2));
        auto d = parse_int(text.substr(8, 2));
        if (d && m && y) {
            return make_day(*y, *m, *d);
        }
    }
    return std::nullopt;
}

std::optional<Duration> parse_time_of_day(std::string_view text) {
    if (text.size() != 5 && text.size() != 8) {
        return std::nullopt;
    }
    if (text[2] != ':' || (text.size() == 8 && text[5] != ':')) {
        return std::nullopt;
    }
    auto h = parse_int(text.substr(0, 2));
    auto m = parse_int(text.substr(3, 2));
    auto s = text.size() == 8 ? parse_int(text.substr(6, 2)) : std::optional<int>{0};
    if (!h || !m || !s || *h < 0 || *h > 23 || *m < 0 || *m > 59 || *s < 0 || *s > 59) {
        return std::nullopt;
    }
    return Duration{*h * 3600 + *m * 60 + *s};
}

std::optional<Timestamp> parse_timestamp(std::string_view text) {
    auto day = parse_date(text.substr(0, std::min<std::size_t>(10, text.size())));
    if (!day) {
        return std::nullopt;
    }
    if (text.size() == 10) {
        return Timestamp{*day};
    }
    if (text[10] != 'T' && text[10] != ' ') {
        return std::nullopt;
    }
    std::string_view rest = text.substr(11);
    if (!rest.empty() && rest.back() == 'Z') {
        rest.remove_suffix(1);
    }
    auto tod = parse_time_of_day(rest);
    if (!tod) {
        return std::nullopt;
    }
    return Timestamp{*day} + *tod;
}

std::optional<Duration> parse_duration(std::string_view text) {
    if (text.empty()) {
        return std::nullopt;
    }
    long long scale = 1;
    switch (text.back()) {
        case 's': scale = 1; text.remove_suffix(1); break;
        case 'm': scale = 60; text.remove_suffix(1); break;
        case 'h': scale = 3600; text.remove_suffix(1); break;
        case 'd': scale = 86400; text.remove_suffix(1); break;
        default: break;
    }
    long long value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
        return std::nullopt;
    }
    return Duration{value * scale};
}

std::string format_date(std::chrono::sys_days day) {
    std::chrono::year_month_day ymd{day};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

std::string format_timestamp(Timestamp t) {
    auto day = std::chrono::floor<std::chrono::days>(t);
    auto secs = (t - day).count();
    char buf[64];
    std::snprintf(buf, sizeof buf, "T%02lld:%02lld:%02lld", static_cast<long long>(secs / 3600),
                  static_cast<long long>(secs / 60 % 60), static_cast<long long>(secs % 60));
    return format_date(day) + buf;
}

TimeWindow window_of(Timestamp t, Timestamp origin, Duration length) {
    auto offset = (t - origin).count();
    auto len = length.count();
    auto index = offset >= 0 ? offset / len : -((-offset + len - 1) / len);
    Timestamp start = origin + Duration{index * len};
    return {start, start + length};
}

}  // namespace behaviorlab
