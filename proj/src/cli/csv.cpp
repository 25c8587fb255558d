#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include "sqz/cli.hpp"
#include "sqz/errors.hpp"

namespace sqz::cli {
namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_cell(std::string_view cell, std::size_t line_no) {
    cell = trim(cell);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc{} || ptr != cell.data() + cell.size()) {
        std::ostringstream msg;
        msg << "data line " << line_no << ": '" << cell << "' is not a number";
        throw FitError(msg.str());
    }
    return v;
}

}  // namespace

std::string format_number(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

DataSeries parse_data_csv(std::string_view text) {
    std::vector<DataSeries::Row> rows;
    bool header_seen = false;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        const std::string_view line = trim(text.substr(0, nl));
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (line.empty()) continue;
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos) {
            std::ostringstream msg;
            msg << "data line " << line_no << ": expected exactly two comma-separated columns";
            throw FitError(msg.str());
        }
        rows.push_back({parse_cell(line.substr(0, comma), line_no),
                        parse_cell(line.substr(comma + 1), line_no)});
    }
    if (!header_seen) throw FitError("data file is empty (a header row is required)");
    return DataSeries(std::move(rows));
}

DataSeries read_data_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FitError("cannot read data file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_data_csv(buf.str());
}

}  // namespace sqz::cli
