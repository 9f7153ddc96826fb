#pragma once

#include <compare>
#include <string>

namespace burnscan {

/// Proleptic Gregorian calendar date. Only valid dates can be constructed
/// through parse_date/make_date; the raw aggregate is used for literals.
struct Date {
    int year = 1970;
    int month = 1;
    int day = 1;

    auto operator<=>(const Date&) const = default;
};

bool is_leap_year(int year);
int days_in_month(int year, int month);
bool is_valid_date(const Date& d);

/// 1-based ordinal day of year (Jan 1 -> 1, Dec 31 -> 365/366).
int day_of_year(const Date& d);

/// Inverse of day_of_year for a given year. doy must be in [1, 365/366].
Date date_from_doy(int year, int doy);

/// d shifted by n calendar days (n may be negative).
Date add_days(const Date& d, int n);

/// Days since 1970-01-01 (negative before).
long long to_day_number(const Date& d);

/// Strict "YYYY-MM-DD". Throws Errc::ParseError on malformed or invalid dates.
Date parse_date(const std::string& s);

std::string to_string(const Date& d);

/// Half-open calendar interval [start, end).
struct DateWindow {
    Date start;
    Date end;

    bool contains(const Date& d) const { return start <= d && d < end; }
};

/// Validating constructor; throws Errc::InvalidMeta when start >= end.
DateWindow make_window(const Date& start, const Date& end);

} // namespace burnscan
