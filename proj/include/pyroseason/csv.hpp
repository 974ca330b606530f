#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace pyroseason::csv {

// Splits one RFC 4180 record. Quoted fields may contain commas and doubled
// quotes; embedded newlines are not supported (inputs here never have them).
std::vector<std::string> split(std::string_view line);

// Quotes a field only when it needs it.
std::string escape(std::string_view field);

// Shortest round-trip representation; identical on every platform.
std::string format(double value);

class Writer {
public:
	explicit Writer(std::ostream &out) : out_(out) {}
	Writer &field(std::string_view text);
	Writer &field(double value);
	Writer &field(long long value);
	Writer &field(unsigned long long value);
	Writer &field(int value) { return field(static_cast<long long>(value)); }
	Writer &field(std::size_t value) { return field(static_cast<unsigned long long>(value)); }
	void end_row();

private:
	std::ostream &out_;
	bool first_ = true;
};

// Reads the next non-empty line, stripping a trailing '\r'.
bool read_line(std::istream &in, std::string &line);

} // namespace pyroseason::csv
