#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

// Application and quantity registry behind the sweep/eval commands. Each
// application names a parameter list (figure-caption spelling: N_S, r_B,
// ...) and a table of named quantities; sweeps and point evaluations are
// driven entirely by these tables, so adding a column is a table entry.

namespace cpf::cli {

// A config or flag problem tied to one field, so the caller can say
// exactly which input to fix.
struct ConfigError : std::runtime_error {
    std::string field;
    ConfigError(std::string f, const std::string& what)
        : std::runtime_error("field '" + f + "': " + what), field(std::move(f)) {}
};

enum class Application { reading, reading_star, binary_reading, target_finding, generic_cn };

const char* application_name(Application app);
Application parse_application(const std::string& name); // throws ConfigError
std::string application_list();                         // "reading, reading_star, ..."

struct ParamDesc {
    std::string name;
    bool required = true;
    bool integral = false; // may be fixed but never swept
    double fallback = 0.0; // value when optional and absent
};

const std::vector<ParamDesc>& application_params(Application app);
const ParamDesc* find_param(Application app, const std::string& name);

// Fill optional parameters with their fallbacks (absent keys only).
std::map<std::string, double> with_defaults(Application app, std::map<std::string, double> params);

// Throws ConfigError when a required parameter is neither in `params` nor
// named in `provided_elsewhere` (sweep axes, derived values).
void require_params_present(Application app, const std::map<std::string, double>& params,
                            const std::set<std::string>& provided_elsewhere);

// Fully resolved parameter assignment for one evaluation point.
struct ParamSet {
    Application app = Application::reading;
    std::map<std::string, double> values;

    double get(const std::string& name) const;
    int get_int(const std::string& name) const; // rejects non-integer values
    std::uint64_t get_u64(const std::string& name) const;
};

// One evaluated quantity. Probabilities carry ln P alongside the linear
// value so the log10 CSV column survives linear underflow.
struct QuantityValue {
    double value = 0.0;
    double log_value = 0.0; // ln P; meaningful only when is_probability
    bool clamped = false;
    bool monte_carlo = false;
    double std_error = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::string rng_algorithm;
};

// `fixed` are parameters with known values, `swept` the axis names whose
// values vary over the grid; check() returns a message when the quantity
// cannot be evaluated under that assignment.
using QuantityCheck = std::function<std::optional<std::string>(
    const std::map<std::string, double>& fixed, const std::set<std::string>& swept)>;

struct QuantityDesc {
    std::string name;
    bool is_probability = true; // emit a paired log10 column
    std::string summary;
    QuantityCheck check; // may be null (always valid)
    std::function<QuantityValue(const ParamSet&)> eval;
};

const std::vector<QuantityDesc>& application_quantities(Application app);
const QuantityDesc& find_quantity(Application app, const std::string& name); // throws ConfigError
std::string quantity_list(Application app);

} // namespace cpf::cli
