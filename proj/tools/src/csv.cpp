#include "cpfcli/csv.hpp"

#include <cmath>
#include <cstdio>

namespace cpf::cli {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string linear_cell(const QuantityValue& q) {
    const double log10v = q.log_value / 2.302585092994045684;
    if (std::isfinite(log10v) && log10v < -300.0) return "";
    if (!std::isfinite(q.value)) return "";
    return format_double(q.value);
}

std::string log10_cell(const QuantityValue& q) {
    const double log10v = q.log_value / 2.302585092994045684;
    if (!std::isfinite(log10v)) return "";
    return format_double(log10v);
}

} // namespace cpf::cli
