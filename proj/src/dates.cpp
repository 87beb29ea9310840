#include "freshtab/dates.hpp"

#include "freshtab/errors.hpp"

#include <array>
#include <cstdio>
#include <ctime>

namespace freshtab {

bool is_leap_year(int year) {
    return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

int days_in_month(int year, int month) {
    static constexpr std::array<int, 13> lengths = {0, 31, 28, 31, 30, 31, 30,
                                                    31, 31, 30, 31, 30, 31};
    if (month < 1 || month > 12) return 0;
    if (month == 2 && is_leap_year(year)) return 29;
    return lengths[static_cast<std::size_t>(month)];
}

bool is_valid_date(const Date& d) {
    return d.month >= 1 && d.month <= 12 && d.day >= 1 &&
           d.day <= days_in_month(d.year, d.month);
}

Date parse_date(const std::string& text) {
    Date d;
    char tail = '\0';
    if (std::sscanf(text.c_str(), "%4d-%2d-%2d%c", &d.year, &d.month, &d.day, &tail) != 3 ||
        text.size() != 10) {
        throw ValidationError("not an ISO date (YYYY-MM-DD): '" + text + "'");
    }
    if (!is_valid_date(d)) {
        throw ValidationError("invalid calendar date: '" + text + "'");
    }
    return d;
}

Date parse_date_prefix(const std::string& text) {
    if (text.size() > 10 && text[10] == 'T') return parse_date(text.substr(0, 10));
    return parse_date(text);
}

std::string format_date(const Date& d) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", d.year, d.month, d.day);
    return buf;
}

Date today_utc() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    return Date{tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday};
}

Date first_of_next_month(const Date& d) {
    if (d.month == 12) return Date{d.year + 1, 1, 1};
    return Date{d.year, d.month + 1, 1};
}

Date last_of_month(int year, int month) {
    return Date{year, month, days_in_month(year, month)};
}

}  // namespace freshtab
