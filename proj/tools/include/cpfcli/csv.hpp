#pragma once

#include "cpfcli/registry.hpp"

#include <string>

// CSV cell formatting shared by the sweep writer and its tests. Rules:
// '.' decimal point, 12 significant digits, LF endings (the writer opens
// files in binary mode). A probability whose linear value would print as
// a denormal-or-worse artifact (log10 below -300) is emitted as an empty
// cell, with the log10 column still carrying the value; a log10 cell is
// empty only when the log itself is not finite (an exact zero).

namespace cpf::cli {

std::string format_double(double v);

// Linear-column cell for a probability quantity.
std::string linear_cell(const QuantityValue& q);

// log10-column cell for a probability quantity (input is ln P).
std::string log10_cell(const QuantityValue& q);

} // namespace cpf::cli
