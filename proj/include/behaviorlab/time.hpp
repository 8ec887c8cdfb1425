#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace behaviorlab {

using Timestamp = std::chrono::sys_seconds;
using Duration = std::chrono::seconds;

/// Half-open interval [start, end).
struct TimeWindow {
    Timestamp start{};
    Timestamp end{};

    bool contains(Timestamp t) const noexcept { return start <= t && t < end; }
    auto operator<=>(const TimeWindow&) const = default;
};

/// Accepts DD/MM/YYYY and YYYY-MM-DD.
std::optional<std::chrono::sys_days> parse_date(std::string_view text);

/// HH:MM:SS (or HH:MM) as seconds since midnight.
std::optional<Duration> parse_time_of_day(std::string_view text);

/// A date, optionally followed by 'T' or ' ' and a time of day.
std::optional<Timestamp> parse_timestamp(std::string_view text);

/// Integer seconds with an optional unit suffix: s, m, h, d.
std::optional<Duration> parse_duration(std::string_view text);

std::string format_date(std::chrono::sys_days day);
std::string format_timestamp(Timestamp t);

/// The window of length `length` (aligned at `origin`) containing t.
TimeWindow window_of(Timestamp t, Timestamp origin, Duration length);

}  // namespace behaviorlab
