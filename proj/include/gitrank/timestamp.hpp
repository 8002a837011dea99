#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace gitrank {

using Timestamp = std::chrono::sys_seconds;

/// Parses an RFC 3339 date-time (`2021-06-01T12:00:00Z`, optional fractional
/// seconds, `Z` or `+hh:mm` offset). Fractions are truncated; leap seconds
/// are rejected.
[[nodiscard]] std::optional<Timestamp> parse_rfc3339(std::string_view text) noexcept;

/// `YYYY-MM-DDTHH:MM:SSZ` in UTC.
[[nodiscard]] std::string format_rfc3339(Timestamp t);

/// `YYYY-MM-DD` in UTC.
[[nodiscard]] std::string format_date(Timestamp t);

/// Same wall-clock time `months` calendar months earlier; the day is clamped
/// to the end of a shorter month (Mar 31 minus one month is Feb 28/29).
[[nodiscard]] Timestamp months_before(Timestamp t, int months);

[[nodiscard]] inline Timestamp now_utc()
{
    return std::chrono::time_point_cast<std::chrono::seconds>(std::chrono::system_clock::now());
}

}  // namespace gitrank
