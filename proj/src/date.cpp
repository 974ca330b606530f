#include "pyroseason/date.hpp"

#include "pyroseason/error.hpp"

#include <charconv>
#include <cstdio>

namespace pyroseason {

namespace {

// Howard Hinnant's days_from_civil / civil_from_days.
std::int32_t days_from_civil(int y, unsigned m, unsigned d) {
	y -= m <= 2;
	const int era = (y >= 0 ? y : y - 399) / 400;
	const unsigned yoe = static_cast<unsigned>(y - era * 400);
	const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
	const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
	return era * 146097 + static_cast<int>(doe) - 719468;
}

struct Civil {
	int y;
	unsigned m;
	unsigned d;
};

Civil civil_from_days(std::int32_t z) {
	z += 719468;
	const int era = (z >= 0 ? z : z - 146096) / 146097;
	const unsigned doe = static_cast<unsigned>(z - era * 146097);
	const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
	const int y = static_cast<int>(yoe) + era * 400;
	const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
	const unsigned mp = (5 * doy + 2) / 153;
	const unsigned d = doy - (153 * mp + 2) / 5 + 1;
	const unsigned m = mp < 10 ? mp + 3 : mp - 9;
	return {y + (m <= 2), m, d};
}

} // namespace

bool is_leap_year(int year) {
	return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

int days_in_month(int year, int month) {
	static constexpr int kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
	if (month < 1 || month > 12) {
		throw BoundsError("month out of range: " + std::to_string(month));
	}
	return month == 2 && is_leap_year(year) ? 29 : kDays[month - 1];
}

Date Date::from_ymd(int year, int month, int day) {
	if (month < 1 || month > 12 || day < 1 || day > days_in_month(year, month)) {
		throw BoundsError("invalid calendar date");
	}
	return from_serial(days_from_civil(year, static_cast<unsigned>(month), static_cast<unsigned>(day)));
}

Date Date::parse(std::string_view text) {
	auto fail = [&]() -> Date { throw ParseError("invalid date '" + std::string(text) + "', expected YYYY-MM-DD"); };
	if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
		return fail();
	}
	int y = 0, m = 0, d = 0;
	auto num = [&](std::size_t pos, std::size_t len, int &out) {
		auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + pos + len, out);
		return ec == std::errc() && ptr == text.data() + pos + len;
	};
	if (!num(0, 4, y) || !num(5, 2, m) || !num(8, 2, d)) {
		return fail();
	}
	if (m < 1 || m > 12 || d < 1 || d > days_in_month(y, m)) {
		return fail();
	}
	return from_ymd(y, m, d);
}

int Date::year() const {
	return civil_from_days(serial_).y;
}

int Date::month() const {
	return static_cast<int>(civil_from_days(serial_).m);
}

int Date::day() const {
	return static_cast<int>(civil_from_days(serial_).d);
}

std::string Date::to_string() const {
	const auto c = civil_from_days(serial_);
	char buf[16];
	std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", c.y, c.m, c.d);
	return buf;
}

Date month_start(int year, int month, int offset) {
	int index = year * 12 + (month - 1) + offset;
	int y = index >= 0 ? index / 12 : -((-index + 11) / 12);
	int m = index - y * 12 + 1;
	return Date::from_ymd(y, m, 1);
}

} // namespace pyroseason
