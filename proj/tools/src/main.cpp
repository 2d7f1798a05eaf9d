#include "cpfcli/csv.hpp"
#include "cpfcli/presets.hpp"
#include "cpfcli/registry.hpp"
#include "cpfcli/sweep.hpp"
#include "cpfcli/verify.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace cpf::cli;

void print_quantity(const std::string& name, const QuantityDesc& desc, const QuantityValue& v) {
    std::cout << name << " = ";
    if (!desc.is_probability) {
        std::cout << format_double(v.value) << "\n";
        return;
    }
    const std::string lin = linear_cell(v);
    std::cout << (lin.empty() ? "(< 1e-300)" : lin);
    if (v.monte_carlo) std::cout << " +- " << format_double(v.std_error);
    const std::string l10 = log10_cell(v);
    if (!l10.empty()) std::cout << "   log10 = " << l10;
    if (v.clamped) std::cout << "   [upper bound clamped to 1]";
    if (v.monte_carlo)
        std::cout << "   (trials=" << v.trials << ", seed=" << v.seed << ", rng="
                  << v.rng_algorithm << ")";
    std::cout << "\n";
}

int do_eval(const std::string& app_name, const std::map<std::string, double>& given,
            const std::vector<std::string>& quantities) {
    const Application app = parse_application(app_name);
    for (const auto& [k, v] : given) {
        (void)v;
        if (!find_param(app, k)) {
            std::string params;
            for (const auto& d : application_params(app)) {
                if (!params.empty()) params += ", ";
                params += d.name;
            }
            throw ConfigError("--" + k, "not a parameter of application '" +
                                            std::string(application_name(app)) +
                                            "' (parameters: " + params + ")");
        }
    }
    require_params_present(app, given, {});

    ParamSet ps;
    ps.app = app;
    ps.values = with_defaults(app, given);
    for (const auto& name : quantities) {
        const QuantityDesc& desc = find_quantity(app, name);
        if (desc.check)
            if (auto msg = desc.check(ps.values, {}))
                throw ConfigError("--quantity", "'" + name + "': " + *msg);
        print_quantity(name, desc, desc.eval(ps));
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"channel-position finding: error probabilities, receivers, sweeps"};
    app.require_subcommand(1);

    std::string config_path;
    std::string sweep_out;
    std::vector<std::string> overrides;
    auto* sweep_cmd = app.add_subcommand("sweep", "run a parameter sweep from a config file");
    sweep_cmd->add_option("config", config_path, "'key = value' config file")
        ->required()
        ->check(CLI::ExistingFile);
    sweep_cmd->add_option("--out", sweep_out, "output CSV path (overrides the file's 'out')");
    sweep_cmd->add_option("--set", overrides, "override a config entry, key=value (repeatable)");

    std::string preset;
    std::string fig_out;
    auto* fig_cmd = app.add_subcommand("fig", "write the CSV behind a named figure preset");
    fig_cmd->add_option("preset", preset, "fig2a..fig2c, fig3a..fig3c, fig4a, fig4b, fig5")
        ->required();
    fig_cmd->add_option("--out", fig_out, "output CSV path");

    std::string suite;
    double verify_trials = 0.0;
    std::uint64_t verify_seed = 0;
    int verify_m = 0;
    auto* verify_cmd =
        app.add_subcommand("verify", "closed forms against Monte Carlo / Fock oracles");
    verify_cmd->add_option("suite", suite, "cn | fidelity | dd")->required();
    auto* trials_opt = verify_cmd->add_option("--trials", verify_trials,
                                              "trials (cn, dd) or state pairs (fidelity)");
    auto* seed_opt = verify_cmd->add_option("--seed", verify_seed, "RNG seed");
    auto* m_opt = verify_cmd->add_option("--m", verify_m, "hypothesis count (dd suite)");

    std::string eval_app;
    std::vector<std::string> eval_quantities;
    std::map<std::string, double> eval_params;
    auto* eval_cmd = app.add_subcommand("eval", "evaluate named quantities at one point");
    eval_cmd->add_option("application", eval_app, application_list())->required();
    eval_cmd->add_option("--quantity", eval_quantities, "quantity name (repeatable)")->required();
    static const char* flag_names[] = {"m",   "M",     "N_S",   "r_B",            "r_T",
                                       "N_B", "eta",   "zeta1", "zeta2",          "precision_bits",
                                       "trials", "seed"};
    for (const char* name : flag_names)
        eval_cmd->add_option_function<double>(
            std::string("--") + name,
            [&eval_params, name](double v) { eval_params[name] = v; },
            std::string("parameter ") + name);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sweep_cmd) {
            SweepSpec spec = parse_config_file(config_path);
            for (const auto& o : overrides) apply_override(spec, o);
            if (!sweep_out.empty()) spec.output_path = sweep_out;
            std::cout << run_sweep(spec).one_line() << "\n";
            return 0;
        }
        if (*fig_cmd) {
            SweepSpec spec = make_preset(preset);
            if (!fig_out.empty()) spec.output_path = fig_out;
            std::cout << run_sweep(spec).one_line() << "\n";
            return 0;
        }
        if (*verify_cmd) {
            return run_verify(suite,
                              trials_opt->count() ? std::optional<double>(verify_trials)
                                                  : std::nullopt,
                              seed_opt->count() ? std::optional<std::uint64_t>(verify_seed)
                                                : std::nullopt,
                              m_opt->count() ? std::optional<int>(verify_m) : std::nullopt,
                              std::cout);
        }
        if (*eval_cmd) return do_eval(eval_app, eval_params, eval_quantities);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
