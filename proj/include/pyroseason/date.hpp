#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace pyroseason {

// Proleptic Gregorian calendar date stored as days since 1970-01-01.
class Date {
public:
	constexpr Date() = default;

	static Date from_ymd(int year, int month, int day);
	static constexpr Date from_serial(std::int32_t days) {
		Date d;
		d.serial_ = days;
		return d;
	}
	// Strict YYYY-MM-DD; throws ParseError.
	static Date parse(std::string_view text);

	constexpr std::int32_t serial() const { return serial_; }
	int year() const;
	int month() const;
	int day() const;
	std::string to_string() const;

	Date add_days(std::int32_t n) const { return from_serial(serial_ + n); }
	friend std::int32_t operator-(Date a, Date b) { return a.serial_ - b.serial_; }
	friend constexpr auto operator<=>(Date, Date) = default;

private:
	std::int32_t serial_ = 0;
};

struct DateRange {
	Date first;
	Date last; // inclusive

	std::int32_t days() const { return last - first + 1; }
	bool contains(Date d) const { return first <= d && d <= last; }
};

bool is_leap_year(int year);
int days_in_month(int year, int month);

// First day of the month that lies `offset` months from (year, month).
Date month_start(int year, int month, int offset = 0);

} // namespace pyroseason
