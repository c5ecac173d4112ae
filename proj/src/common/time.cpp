#include "assetval/common/time.hpp"

#include <cctype>
#include <chrono>
#include <cstdio>

#include "assetval/common/error.hpp"

namespace assetval {

std::int64_t days_from_civil(int y, unsigned m, unsigned d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& year, unsigned& month, unsigned& day) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  day = doy - (153 * mp + 2) / 5 + 1;
  month = mp + (mp < 10 ? 3 : -9);
  year = static_cast<int>(y + (month <= 2));
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

int to_int(std::string_view s) {
  int v = 0;
  for (char c : s) v = v * 10 + (c - '0');
  return v;
}

bool valid_ymd(int y, int m, int d) {
  if (m < 1 || m > 12 || d < 1) return false;
  static const int days_in[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  int limit = days_in[m - 1];
  const bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
  if (m == 2 && leap) limit = 29;
  return d <= limit;
}

}  // namespace

std::int64_t parse_iso_date(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-')
    raise(Errc::InvalidValue, "bad date: " + std::string(text));
  auto ys = text.substr(0, 4), ms = text.substr(5, 2), ds = text.substr(8, 2);
  if (!all_digits(ys) || !all_digits(ms) || !all_digits(ds))
    raise(Errc::InvalidValue, "bad date: " + std::string(text));
  const int y = to_int(ys), m = to_int(ms), d = to_int(ds);
  if (!valid_ymd(y, m, d)) raise(Errc::InvalidValue, "bad date: " + std::string(text));
  return days_from_civil(y, static_cast<unsigned>(m), static_cast<unsigned>(d));
}

std::int64_t parse_iso_instant(std::string_view text) {
  if (text.size() != 20 || text[10] != 'T' || text[13] != ':' || text[16] != ':' || text[19] != 'Z')
    raise(Errc::InvalidValue, "bad instant: " + std::string(text));
  const std::int64_t days = parse_iso_date(text.substr(0, 10));
  auto hs = text.substr(11, 2), mins = text.substr(14, 2), ss = text.substr(17, 2);
  if (!all_digits(hs) || !all_digits(mins) || !all_digits(ss))
    raise(Errc::InvalidValue, "bad instant: " + std::string(text));
  const int h = to_int(hs), mi = to_int(mins), s = to_int(ss);
  if (h > 23 || mi > 59 || s > 60) raise(Errc::InvalidValue, "bad instant: " + std::string(text));
  return days * kSecondsPerDay + h * 3600 + mi * 60 + s;
}

std::string format_iso_date(std::int64_t days) {
  int y;
  unsigned m, d;
  civil_from_days(days, y, m, d);
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", y, m, d);
  return buf;
}

std::string format_iso_instant(std::int64_t epoch_seconds) {
  const std::int64_t days = day_of_instant(epoch_seconds);
  std::int64_t rest = epoch_seconds - days * kSecondsPerDay;
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%sT%02d:%02d:%02dZ", format_iso_date(days).c_str(),
                static_cast<int>(rest / 3600), static_cast<int>(rest / 60 % 60),
                static_cast<int>(rest % 60));
  return buf;
}

std::int64_t day_of_instant(std::int64_t epoch_seconds) {
  std::int64_t d = epoch_seconds / kSecondsPerDay;
  if (epoch_seconds < 0 && epoch_seconds % kSecondsPerDay != 0) --d;
  return d;
}

std::int64_t month_index_of_day(std::int64_t days) {
  int y;
  unsigned m, d;
  civil_from_days(days, y, m, d);
  return static_cast<std::int64_t>(y) * 12 + (m - 1);
}

void month_from_index(std::int64_t index, int& year, unsigned& month) {
  year = static_cast<int>(index / 12);
  std::int64_t m = index % 12;
  if (m < 0) {
    m += 12;
    --year;
  }
  month = static_cast<unsigned>(m) + 1;
}

std::int64_t now_epoch_seconds() {
  return std::chrono::duration_cast<std::chrono::seconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

}  // namespace assetval
