#include "pyroseason/csv.hpp"

#include "pyroseason/error.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>

namespace pyroseason::csv {

std::vector<std::string> split(std::string_view line) {
	std::vector<std::string> out;
	std::string cur;
	bool quoted = false;
	for (std::size_t i = 0; i < line.size(); ++i) {
		const char c = line[i];
		if (quoted) {
			if (c == '"') {
				if (i + 1 < line.size() && line[i + 1] == '"') {
					cur.push_back('"');
					++i;
				} else {
					quoted = false;
				}
			} else {
				cur.push_back(c);
			}
		} else if (c == '"') {
			quoted = true;
		} else if (c == ',') {
			out.push_back(std::move(cur));
			cur.clear();
		} else {
			cur.push_back(c);
		}
	}
	if (quoted) {
		throw ParseError("unterminated quoted field");
	}
	out.push_back(std::move(cur));
	return out;
}

std::string escape(std::string_view field) {
	if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
		return std::string(field);
	}
	std::string out = "\"";
	for (char c : field) {
		if (c == '"') {
			out.push_back('"');
		}
		out.push_back(c);
	}
	out.push_back('"');
	return out;
}

std::string format(double value) {
	if (std::isnan(value)) {
		return "NA";
	}
	if (std::isinf(value)) {
		return value > 0 ? "Inf" : "-Inf";
	}
	if (value == 0.0) {
		return "0";
	}
	char buf[64];
	auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
	return std::string(buf, ptr);
}

Writer &Writer::field(std::string_view text) {
	if (!first_) {
		out_ << ',';
	}
	out_ << escape(text);
	first_ = false;
	return *this;
}

Writer &Writer::field(double value) {
	return field(std::string_view(format(value)));
}

Writer &Writer::field(long long value) {
	return field(std::string_view(std::to_string(value)));
}

Writer &Writer::field(unsigned long long value) {
	return field(std::string_view(std::to_string(value)));
}

void Writer::end_row() {
	out_ << '\n';
	first_ = true;
}

bool read_line(std::istream &in, std::string &line) {
	while (std::getline(in, line)) {
		if (!line.empty() && line.back() == '\r') {
			line.pop_back();
		}
		if (!line.empty()) {
			return true;
		}
	}
	return false;
}

} // namespace pyroseason::csv
