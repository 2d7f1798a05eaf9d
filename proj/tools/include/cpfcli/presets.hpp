#pragma once

#include "cpfcli/sweep.hpp"

#include <string>
#include <vector>

// Named sweep specifications reproducing the data behind the standard
// figures of the study: quantum reading over (r_B, r_T) and over M, the
// ideal-background variants, binary reading, and target finding. Axis
// ranges are chosen to span each figure's visible range (the exact grids
// are not published); every preset documents its grid in the CSV header.

namespace cpf::cli {

std::vector<std::string> preset_names();

// Throws ConfigError listing the valid names on an unknown preset.
SweepSpec make_preset(const std::string& name);

} // namespace cpf::cli
