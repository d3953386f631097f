#pragma once

#include <initializer_list>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace kerramp {

/// Comma-separated output with a mandatory header and '\n' line endings.
/// Doubles are printed with 17 significant digits, booleans as 0/1.
class CsvWriter {
public:
    using Cell = std::variant<double, long long, bool, std::string>;

    CsvWriter(std::ostream& out, std::vector<std::string> header);

    void row(std::initializer_list<Cell> cells);

    [[nodiscard]] const std::vector<std::string>& header() const noexcept { return header_; }

private:
    std::ostream& out_;
    std::vector<std::string> header_;
};

}  // namespace kerramp
