#include "newscov/instant.hpp"

#include <array>
#include <cctype>
#include <cstdio>

namespace newscov {
namespace {

// Civil-date <-> day-count conversions for the proleptic Gregorian calendar
// (Howard Hinnant's chrono-compatible algorithms).
std::int64_t days_from_civil(int y, unsigned m, unsigned d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, unsigned& m, unsigned& d) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t yr = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = doy - (153 * mp + 2) / 5 + 1;
  m = mp + (mp < 10 ? 3 : -9);
  y = static_cast<int>(yr + (m <= 2));
}

bool is_leap(int y) {
  return y % 4 == 0 && (y % 100 != 0 || y % 400 == 0);
}

unsigned last_day_of_month(int y, unsigned m) {
  constexpr std::array<unsigned, 12> days = {31, 28, 31, 30, 31, 30,
                                             31, 31, 30, 31, 30, 31};
  if (m == 2 && is_leap(y)) return 29;
  return days[m - 1];
}

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

std::optional<Instant> make_instant(int y, int mo, int d, int h, int mi,
                                    int s) {
  if (mo < 1 || mo > 12) return std::nullopt;
  if (d < 1 || static_cast<unsigned>(d) > last_day_of_month(y, mo))
    return std::nullopt;
  if (h < 0 || h > 23 || mi < 0 || mi > 59 || s < 0 || s > 59)
    return std::nullopt;
  return days_from_civil(y, mo, d) * 86400 + h * 3600 + mi * 60 + s;
}

}  // namespace

std::optional<Instant> parse_instant(std::string_view text) {
  if (text.size() == 14 && all_digits(text)) {
    return make_instant(to_int(text.substr(0, 4)), to_int(text.substr(4, 2)),
                        to_int(text.substr(6, 2)), to_int(text.substr(8, 2)),
                        to_int(text.substr(10, 2)),
                        to_int(text.substr(12, 2)));
  }
  if (text.size() == 10 && text[4] == '-' && text[7] == '-' &&
      all_digits(text.substr(0, 4)) && all_digits(text.substr(5, 2)) &&
      all_digits(text.substr(8, 2))) {
    return make_instant(to_int(text.substr(0, 4)), to_int(text.substr(5, 2)),
                        to_int(text.substr(8, 2)), 0, 0, 0);
  }
  if (text.size() == 20 && text[4] == '-' && text[7] == '-' &&
      text[10] == 'T' && text[13] == ':' && text[16] == ':' &&
      text[19] == 'Z' && all_digits(text.substr(0, 4)) &&
      all_digits(text.substr(5, 2)) && all_digits(text.substr(8, 2)) &&
      all_digits(text.substr(11, 2)) && all_digits(text.substr(14, 2)) &&
      all_digits(text.substr(17, 2))) {
    return make_instant(to_int(text.substr(0, 4)), to_int(text.substr(5, 2)),
                        to_int(text.substr(8, 2)), to_int(text.substr(11, 2)),
                        to_int(text.substr(14, 2)),
                        to_int(text.substr(17, 2)));
  }
  return std::nullopt;
}

std::string format_instant(Instant t) {
  std::int64_t days = t / 86400;
  std::int64_t rem = t % 86400;
  if (rem < 0) {
    rem += 86400;
    days -= 1;
  }
  int y;
  unsigned mo, d;
  civil_from_days(days, y, mo, d);
  const int h = static_cast<int>(rem / 3600);
  const int mi = static_cast<int>(rem % 3600 / 60);
  const int s = static_cast<int>(rem % 60);
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02d:%02d:%02dZ", y, mo, d,
                h, mi, s);
  return buf;
}

}  // namespace newscov
