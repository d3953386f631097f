#include "kerramp/csv.hpp"

#include "kerramp/config.hpp"

#include <cmath>
#include <stdexcept>

namespace kerramp {

namespace {

std::string render(const CsvWriter::Cell& cell) {
    struct Visitor {
        std::string operator()(double v) const {
            if (std::isnan(v)) {
                return "nan";
            }
            if (std::isinf(v)) {
                return v > 0 ? "inf" : "-inf";
            }
            return format_double(v);
        }
        std::string operator()(long long v) const { return std::to_string(v); }
        std::string operator()(bool v) const { return v ? "1" : "0"; }
        std::string operator()(const std::string& v) const { return v; }
    };
    return std::visit(Visitor{}, cell);
}

}  // namespace

CsvWriter::CsvWriter(std::ostream& out, std::vector<std::string> header)
    : out_(out), header_(std::move(header)) {
    for (std::size_t i = 0; i < header_.size(); ++i) {
        out_ << (i ? "," : "") << header_[i];
    }
    out_ << '\n';
}

void CsvWriter::row(std::initializer_list<Cell> cells) {
    if (cells.size() != header_.size()) {
        throw std::logic_error("CSV row width does not match header");
    }
    std::size_t i = 0;
    for (const auto& c : cells) {
        out_ << (i++ ? "," : "") << render(c);
    }
    out_ << '\n';
}

}  // namespace kerramp
