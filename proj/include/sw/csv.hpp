#pragma once

#include <ostream>
#include <string>
#include <vector>

// RFC-4180-style CSV emission with deterministic number formatting
// ('%.17g', '.' decimal separator).

namespace sw::csv {

std::string escape(const std::string& field);
std::string format(double v);
std::string format(std::size_t v);

class Writer {
public:
    explicit Writer(std::ostream& out) : out_(out) {}

    void row(const std::vector<std::string>& fields);

private:
    std::ostream& out_;
};

} // namespace sw::csv
