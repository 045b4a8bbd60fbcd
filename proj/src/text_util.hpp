#pragma once

#include <cstddef>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace vsd::text {

std::vector<std::string> split(std::string_view s, char sep);
// Splits on runs of spaces/tabs, dropping empty fields.
std::vector<std::string> split_ws(std::string_view s);
std::string trim(std::string_view s);

// Iterates non-blank, non-`#` lines, tracking the 1-based line number.
class LineReader {
public:
    explicit LineReader(std::istream & in) : in_(in) {}

    bool next(std::string & line);
    std::size_t line_no() const { return line_no_; }

private:
    std::istream & in_;
    std::size_t line_no_ = 0;
};

// Shortest round-tripping decimal form of a double.
std::string format_double(double v);

double parse_double(const std::string & s, std::size_t line = 0);
long parse_long(const std::string & s, std::size_t line = 0);

} // namespace vsd::text
