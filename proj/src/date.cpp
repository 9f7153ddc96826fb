#include "burnscan/date.hpp"

#include "burnscan/errors.hpp"

#include <array>
#include <cstdio>

namespace burnscan {

namespace {
constexpr std::array<int, 12> kMonthDays = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
}

bool is_leap_year(int year) {
    return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

int days_in_month(int year, int month) {
    if (month == 2 && is_leap_year(year)) return 29;
    return kMonthDays[static_cast<size_t>(month - 1)];
}

bool is_valid_date(const Date& d) {
    if (d.month < 1 || d.month > 12) return false;
    if (d.day < 1 || d.day > days_in_month(d.year, d.month)) return false;
    return true;
}

int day_of_year(const Date& d) {
    int doy = d.day;
    for (int m = 1; m < d.month; ++m) doy += days_in_month(d.year, m);
    return doy;
}

Date date_from_doy(int year, int doy) {
    int limit = is_leap_year(year) ? 366 : 365;
    if (doy < 1 || doy > limit)
        fail(Errc::InvalidSpec, "day-of-year " + std::to_string(doy) + " out of range for " + std::to_string(year));
    int month = 1;
    while (doy > days_in_month(year, month)) {
        doy -= days_in_month(year, month);
        ++month;
    }
    return Date{year, month, doy};
}

Date add_days(const Date& d, int n) {
    Date r = d;
    while (n > 0) {
        int rem = days_in_month(r.year, r.month) - r.day;
        if (n <= rem) {
            r.day += n;
            return r;
        }
        n -= rem + 1;
        r.day = 1;
        if (++r.month > 12) {
            r.month = 1;
            ++r.year;
        }
    }
    while (n < 0) {
        if (r.day - 1 >= -n) {
            r.day += n;
            return r;
        }
        n += r.day;
        if (--r.month < 1) {
            r.month = 12;
            --r.year;
        }
        r.day = days_in_month(r.year, r.month);
    }
    return r;
}

long long to_day_number(const Date& d) {
    // days-from-civil
    long long y = d.year;
    unsigned m = static_cast<unsigned>(d.month), day = static_cast<unsigned>(d.day);
    y -= m <= 2;
    const long long era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + day - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<long long>(doe) - 719468;
}

Date parse_date(const std::string& s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-')
        fail(Errc::ParseError, "expected YYYY-MM-DD, got '" + s + "'");
    for (size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u})
        if (s[i] < '0' || s[i] > '9') fail(Errc::ParseError, "expected YYYY-MM-DD, got '" + s + "'");
    Date d;
    d.year = std::stoi(s.substr(0, 4));
    d.month = std::stoi(s.substr(5, 2));
    d.day = std::stoi(s.substr(8, 2));
    if (!is_valid_date(d)) fail(Errc::ParseError, "invalid calendar date '" + s + "'");
    return d;
}

std::string to_string(const Date& d) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", d.year, d.month, d.day);
    return buf;
}

DateWindow make_window(const Date& start, const Date& end) {
    if (!(start < end))
        fail(Errc::InvalidMeta, "date window start " + to_string(start) + " must precede end " + to_string(end));
    return DateWindow{start, end};
}

} // namespace burnscan
