#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace assetval {

inline constexpr std::int64_t kSecondsPerDay = 86400;

// Proleptic Gregorian calendar conversions (Howard Hinnant's algorithms).
std::int64_t days_from_civil(int year, unsigned month, unsigned day);
void civil_from_days(std::int64_t days, int& year, unsigned& month, unsigned& day);

// "YYYY-MM-DDTHH:MM:SSZ" <-> UTC epoch seconds.
std::int64_t parse_iso_instant(std::string_view text);
std::string format_iso_instant(std::int64_t epoch_seconds);

// "YYYY-MM-DD" <-> days since 1970-01-01.
std::int64_t parse_iso_date(std::string_view text);
std::string format_iso_date(std::int64_t days);

std::int64_t day_of_instant(std::int64_t epoch_seconds);

// year*12 + month-1; used for calendar-month bucketing.
std::int64_t month_index_of_day(std::int64_t days);
void month_from_index(std::int64_t index, int& year, unsigned& month);

std::int64_t now_epoch_seconds();

}  // namespace assetval
