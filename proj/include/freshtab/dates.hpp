#pragma once

#include <compare>
#include <string>

namespace freshtab {

// UTC calendar date; every date in the pipeline is day-granular.
struct Date {
    int year = 0;
    int month = 0;  // 1..12
    int day = 0;    // 1..31

    auto operator<=>(const Date&) const = default;
};

bool is_leap_year(int year);
int days_in_month(int year, int month);
bool is_valid_date(const Date& d);

// Strict ISO "YYYY-MM-DD"; throws ValidationError otherwise.
Date parse_date(const std::string& text);
std::string format_date(const Date& d);

// Accepts "YYYY-MM-DD" or MediaWiki/SPARQL "YYYY-MM-DDThh:mm:ssZ"; the time
// part is dropped.
Date parse_date_prefix(const std::string& text);

Date today_utc();

Date first_of_next_month(const Date& d);
Date last_of_month(int year, int month);

}  // namespace freshtab
