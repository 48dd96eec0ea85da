#include "nordfreq/time_series.hpp"

#include <cstdio>
#include <regex>

namespace nordfreq {

namespace {

// Howard Hinnant's public-domain civil-from-days / days-from-civil
// algorithms, valid over +/- millions of years.
std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);            // [0, 399]
    const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1; // [0, 365]
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;           // [0, 146096]
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);          // [0, 146096]
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t yy = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);          // [0, 365]
    const unsigned mp = (5 * doy + 2) / 153;                               // [0, 11]
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);                    // [1, 31]
    m = static_cast<int>(mp + (mp < 10 ? 3 : -9));                         // [1, 12]
    y = static_cast<int>(yy + (m <= 2));
}

bool is_leap(int y) {
    return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
}

int days_in_month(int y, int m) {
    static const int lengths[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m == 2 && is_leap(y)) {
        return 29;
    }
    return lengths[m - 1];
}

} // namespace

std::int64_t hour_from_civil(const CivilHour& c) {
    if (c.month < 1 || c.month > 12) {
        throw ParseError("month out of range: " + std::to_string(c.month));
    }
    if (c.day < 1 || c.day > days_in_month(c.year, c.month)) {
        throw ParseError("day out of range: " + std::to_string(c.day));
    }
    if (c.hour < 0 || c.hour > 23) {
        throw ParseError("hour out of range: " + std::to_string(c.hour));
    }
    return days_from_civil(c.year, c.month, c.day) * 24 + c.hour;
}

CivilHour civil_from_hour(std::int64_t hour) {
    std::int64_t days = hour / 24;
    int h = static_cast<int>(hour % 24);
    if (h < 0) {
        h += 24;
        days -= 1;
    }
    CivilHour c;
    civil_from_days(days, c.year, c.month, c.day);
    c.hour = h;
    return c;
}

std::string iso_from_hour(std::int64_t hour) {
    const CivilHour c = civil_from_hour(hour);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:00:00Z", c.year, c.month, c.day,
                  c.hour);
    return buf;
}

std::int64_t hour_from_iso(const std::string& text) {
    static const std::regex pattern(
        R"(^(\d{4})-(\d{2})-(\d{2})[T ](\d{2}):(\d{2})(?::(\d{2}))?Z?$)");
    std::smatch m;
    if (!std::regex_match(text, m, pattern)) {
        throw ParseError("not an ISO-8601 hour: '" + text + "'");
    }
    const int minute = std::stoi(m[5].str());
    const int second = m[6].matched ? std::stoi(m[6].str()) : 0;
    if (minute != 0 || second != 0) {
        throw ParseError("timestamps must fall on whole hours: '" + text + "'");
    }
    return hour_from_civil(CivilHour{std::stoi(m[1].str()), std::stoi(m[2].str()),
                                     std::stoi(m[3].str()), std::stoi(m[4].str())});
}

} // namespace nordfreq
