#include "cpfcli/registry.hpp"

#include <cpf/gus.hpp>
#include <cpf/reading.hpp>
#include <cpf/target_finding.hpp>

#include <cmath>
#include <limits>

namespace cpf::cli {

namespace {

constexpr double ln10 = 2.302585092994045684;

const std::vector<std::pair<Application, const char*>>& name_table() {
    static const std::vector<std::pair<Application, const char*>> t = {
        {Application::reading, "reading"},
        {Application::reading_star, "reading_star"},
        {Application::binary_reading, "binary_reading"},
        {Application::target_finding, "target_finding"},
        {Application::generic_cn, "generic_cn"},
    };
    return t;
}

} // namespace

const char* application_name(Application app) {
    for (const auto& [a, n] : name_table())
        if (a == app) return n;
    return "?";
}

Application parse_application(const std::string& name) {
    for (const auto& [a, n] : name_table())
        if (name == n) return a;
    throw ConfigError("application", "unknown application '" + name +
                                         "' (valid: " + application_list() + ")");
}

std::string application_list() {
    std::string s;
    for (const auto& [a, n] : name_table()) {
        if (!s.empty()) s += ", ";
        s += n;
    }
    return s;
}

const std::vector<ParamDesc>& application_params(Application app) {
    static const std::vector<ParamDesc> reading = {
        {"m", true, true, 0},   {"M", true, false, 0},   {"N_S", true, false, 0},
        {"r_B", true, false, 0}, {"r_T", true, false, 0}, {"N_B", false, false, 0.0},
    };
    static const std::vector<ParamDesc> binary = {
        {"M", true, false, 0},
        {"N_S", true, false, 0},
        {"r_B", true, false, 0},
        {"r_T", true, false, 0},
    };
    static const std::vector<ParamDesc> target = {
        {"m", true, true, 0},
        {"M", true, false, 0},
        {"N_S", true, false, 0},
        {"eta", true, false, 0},
        {"N_B", true, false, 0},
        {"precision_bits", false, true, static_cast<double>(default_precision_bits())},
    };
    static const std::vector<ParamDesc> generic = {
        {"m", true, true, 0},
        {"zeta1", true, false, 0},
        {"zeta2", true, false, 0},
        {"trials", false, true, 100000},
        {"seed", false, true, 12345},
    };
    switch (app) {
    case Application::reading:
    case Application::reading_star: return reading;
    case Application::binary_reading: return binary;
    case Application::target_finding: return target;
    case Application::generic_cn: return generic;
    }
    return reading;
}

const ParamDesc* find_param(Application app, const std::string& name) {
    for (const auto& d : application_params(app))
        if (d.name == name) return &d;
    return nullptr;
}

std::map<std::string, double> with_defaults(Application app, std::map<std::string, double> params) {
    for (const auto& d : application_params(app))
        if (!d.required && !params.count(d.name)) params[d.name] = d.fallback;
    return params;
}

void require_params_present(Application app, const std::map<std::string, double>& params,
                            const std::set<std::string>& provided_elsewhere) {
    for (const auto& d : application_params(app))
        if (d.required && !params.count(d.name) && !provided_elsewhere.count(d.name))
            throw ConfigError(d.name, "required parameter of application '" +
                                          std::string(application_name(app)) + "' is missing");
}

double ParamSet::get(const std::string& name) const {
    auto it = values.find(name);
    if (it == values.end())
        throw ConfigError(name, "parameter not set");
    return it->second;
}

int ParamSet::get_int(const std::string& name) const {
    const double v = get(name);
    if (!(v == std::floor(v)) || std::abs(v) > 2e9)
        throw ConfigError(name, "must be an integer");
    return static_cast<int>(v);
}

std::uint64_t ParamSet::get_u64(const std::string& name) const {
    const double v = get(name);
    if (!(v == std::floor(v)) || v < 0 || v > 1.8e19)
        throw ConfigError(name, "must be a non-negative integer");
    return static_cast<std::uint64_t>(v);
}

namespace {

ReadingParams reading_params(const ParamSet& p) {
    ReadingParams r;
    r.m = p.get_int("m");
    r.M = p.get("M");
    r.n_s = p.get("N_S");
    r.r_b = p.get("r_B");
    r.r_t = p.get("r_T");
    r.n_b = p.get("N_B");
    return r;
}

ReadingParams binary_params(const ParamSet& p) {
    ReadingParams r;
    r.m = 2;
    r.M = p.get("M");
    r.n_s = p.get("N_S");
    r.r_b = p.get("r_B");
    r.r_t = p.get("r_T");
    r.n_b = 0.0;
    return r;
}

TargetFindingParams target_params(const ParamSet& p) {
    TargetFindingParams t;
    t.m = p.get_int("m");
    t.M = p.get("M");
    t.n_s = p.get("N_S");
    t.eta = p.get("eta");
    t.n_b = p.get("N_B");
    t.precision_bits = p.get_int("precision_bits");
    return t;
}

QuantityValue prob(double value, double log_value) {
    QuantityValue q;
    q.value = value;
    q.log_value = log_value;
    return q;
}

QuantityValue plain(double value) {
    QuantityValue q;
    q.value = value;
    q.log_value = std::numeric_limits<double>::quiet_NaN();
    return q;
}

QuantityValue from_result(const DiscriminationResult& r, double log_value) {
    QuantityValue q;
    q.value = r.value;
    q.log_value = log_value;
    q.clamped = r.clamped;
    q.monte_carlo = r.kind == ResultKind::monte_carlo;
    q.std_error = r.std_error;
    q.trials = r.trials;
    q.seed = r.seed;
    q.rng_algorithm = r.rng_algorithm;
    return q;
}

// --- precondition helpers shared by several quantities ------------------

std::optional<std::string> needs_pure_loss(const std::map<std::string, double>& fixed,
                                           const std::set<std::string>& swept) {
    if (swept.count("N_B"))
        return "requires N_B = 0, but N_B is swept";
    auto it = fixed.find("N_B");
    if (it != fixed.end() && it->second != 0.0)
        return "requires N_B = 0 (no receiver / pure-state construction in noise)";
    return std::nullopt;
}

std::optional<std::string> needs_unit_reflectivity(const std::map<std::string, double>& fixed,
                                                   const std::set<std::string>& swept) {
    if (auto e = needs_pure_loss(fixed, swept)) return e;
    auto rb = fixed.find("r_B");
    auto rt = fixed.find("r_T");
    const bool rb1 = rb != fixed.end() && rb->second == 1.0;
    const bool rt1 = rt != fixed.end() && rt->second == 1.0;
    if (!rb1 && !rt1)
        return "requires r_B = 1 or r_T = 1 held fixed";
    return std::nullopt;
}

std::optional<std::string> needs_thermal_background(const std::map<std::string, double>& fixed,
                                                    const std::set<std::string>& swept) {
    auto it = fixed.find("N_B");
    if (it != fixed.end() && it->second <= 0.0)
        return "requires N_B > 0";
    (void)swept; // swept N_B: per-point evaluation reports the offending value
    return std::nullopt;
}

std::vector<QuantityDesc> make_reading_quantities(bool with_star) {
    std::vector<QuantityDesc> q;
    q.push_back({"P_CN_QR", true,
                 "conditional-nulling receiver error, entangled probes",
                 needs_pure_loss,
                 [](const ParamSet& p) {
                     auto r = reading_params(p);
                     return prob(cn_reading_error(r), log_cn_reading_error(r));
                 }});
    q.push_back({"P_H_CR", true,
                 "Helstrom limit of the optimal coherent-state strategy",
                 needs_pure_loss,
                 [](const ParamSet& p) {
                     auto r = reading_params(p);
                     return prob(classical_helstrom(r), log_classical_helstrom(r));
                 }});
    q.push_back({"P_HLB_CR", true,
                 "lower bound on every classical strategy",
                 nullptr,
                 [](const ParamSet& p) {
                     auto r = reading_params(p);
                     return prob(classical_lb(r), log_classical_lb(r));
                 }});
    q.push_back({"P_UB_QR", true,
                 "fidelity upper bound for the entangled strategy (clamped to 1)",
                 nullptr,
                 [](const ParamSet& p) {
                     auto r = reading_params(p);
                     return from_result(quantum_ub(r), log_quantum_ub(r));
                 }});
    q.push_back({"P_UB_QR_ASYM", true,
                 "small-N_S exponential asymptote of P_UB_QR (not clamped)",
                 nullptr,
                 [](const ParamSet& p) {
                     auto r = reading_params(p);
                     return prob(quantum_ub_asymptotic(r), log_quantum_ub_asymptotic(r));
                 }});
    q.push_back({"ZETA_CR", true,
                 "pairwise overlap of the coherent-probe outputs",
                 needs_pure_loss,
                 [](const ParamSet& p) {
                     auto r = reading_params(p);
                     return prob(overlap_classical(r), log_overlap_classical(r));
                 }});
    q.push_back({"ZETA1_QR", true,
                 "type-I error of the nulling POVM (background fires)",
                 needs_pure_loss,
                 [](const ParamSet& p) {
                     auto r = reading_params(p);
                     return prob(cn_error_pair(r).zeta1, log_cn_error_pair(r).log_zeta1);
                 }});
    q.push_back({"ZETA2_QR", true,
                 "type-II error of the nulling POVM (target missed)",
                 needs_pure_loss,
                 [](const ParamSet& p) {
                     auto r = reading_params(p);
                     return prob(cn_error_pair(r).zeta2, log_cn_error_pair(r).log_zeta2);
                 }});
    q.push_back({"LOG10_RATIO_CN_HCR", false,
                 "log10 of P_CN_QR / P_H_CR",
                 needs_pure_loss,
                 [](const ParamSet& p) {
                     auto r = reading_params(p);
                     return plain((log_cn_reading_error(r) - log_classical_helstrom(r)) / ln10);
                 }});
    q.push_back({"R_EXP_NOISY", false,
                 "noisy-setting quantum/classical error-exponent ratio",
                 [](const std::map<std::string, double>& fixed,
                    const std::set<std::string>& swept) -> std::optional<std::string> {
                     if (auto e = needs_thermal_background(fixed, swept)) return e;
                     auto rb = fixed.find("r_B");
                     auto rt = fixed.find("r_T");
                     if (rb != fixed.end() && rt != fixed.end() && rb->second == rt->second)
                         return "requires r_B != r_T";
                     return std::nullopt;
                 },
                 [](const ParamSet& p) { return plain(noisy_exponent_ratio(reading_params(p))); }});
    if (!with_star) return q;

    q.push_back({"P_CNS_QR", true,
                 "improved receiver error when r_B = 1 or r_T = 1",
                 needs_unit_reflectivity,
                 [](const ParamSet& p) {
                     auto r = reading_params(p);
                     return prob(cn_star_error(r), log_cn_star_error(r));
                 }});
    q.push_back({"ZETA1S_QR", true,
                 "type-I error of the improved POVM pair",
                 needs_unit_reflectivity,
                 [](const ParamSet& p) {
                     auto r = reading_params(p);
                     return prob(cn_star_error_pair(r).zeta1, log_cn_star_error_pair(r).log_zeta1);
                 }});
    q.push_back({"ZETA2S_QR", true,
                 "type-II error of the improved POVM pair",
                 needs_unit_reflectivity,
                 [](const ParamSet& p) {
                     auto r = reading_params(p);
                     return prob(cn_star_error_pair(r).zeta2, log_cn_star_error_pair(r).log_zeta2);
                 }});
    q.push_back({"LOG10_RATIO_CNS_HCR", false,
                 "log10 of P_CNS_QR / P_H_CR",
                 needs_unit_reflectivity,
                 [](const ParamSet& p) {
                     auto r = reading_params(p);
                     return plain((log_cn_star_error(r) - log_classical_helstrom(r)) / ln10);
                 }});
    return q;
}

std::vector<QuantityDesc> make_binary_quantities() {
    std::vector<QuantityDesc> q;
    auto needs_order = [](const std::map<std::string, double>& fixed,
                          const std::set<std::string>& swept) -> std::optional<std::string> {
        (void)swept;
        auto rb = fixed.find("r_B");
        auto rt = fixed.find("r_T");
        if (rb != fixed.end() && rt != fixed.end() && !(rb->second > rt->second))
            return "requires r_B > r_T";
        return std::nullopt;
    };
    q.push_back({"P_CN", true,
                 "binary unambiguous-receiver error zeta1 / 2",
                 needs_order,
                 [](const ParamSet& p) {
                     auto r = binary_params(p);
                     return prob(binary_reading_errors(r).cn, log_binary_reading_errors(r).cn);
                 }});
    q.push_back({"P_CNS", true,
                 "improved binary error zeta1* / 2, needs r_B = 1",
                 [](const std::map<std::string, double>& fixed,
                    const std::set<std::string>& swept) -> std::optional<std::string> {
                     if (swept.count("r_B")) return "requires r_B = 1, but r_B is swept";
                     auto rb = fixed.find("r_B");
                     if (rb != fixed.end() && rb->second != 1.0) return "requires r_B = 1";
                     auto rt = fixed.find("r_T");
                     if (rb != fixed.end() && rt != fixed.end() && !(rb->second > rt->second))
                         return "requires r_B > r_T";
                     return std::nullopt;
                 },
                 [](const ParamSet& p) {
                     auto r = binary_params(p);
                     return prob(binary_reading_errors(r).cn_star.value(),
                                 log_binary_reading_errors(r).cn_star.value());
                 }});
    return q;
}

std::vector<QuantityDesc> make_target_quantities() {
    std::vector<QuantityDesc> q;
    q.push_back({"CTF_DD", true,
                 "coherent pulse-position probing with direct detection",
                 nullptr,
                 [](const ParamSet& p) {
                     auto t = target_params(p);
                     return prob(dd_error(t), log_dd_error(t));
                 }});
    q.push_back({"CTF_LB", true,
                 "lower bound on every classical strategy",
                 nullptr,
                 [](const ParamSet& p) {
                     auto t = target_params(p);
                     return prob(ctf_lb(t), log_ctf_lb(t));
                 }});
    q.push_back({"QTF_UB", true,
                 "fidelity upper bound for the entangled strategy (clamped to 1)",
                 nullptr,
                 [](const ParamSet& p) {
                     auto t = target_params(p);
                     return from_result(qtf_ub(t), log_qtf_ub(t));
                 }});
    q.push_back({"QTF_UB_ASYM", true,
                 "exponential asymptote of QTF_UB (not clamped)",
                 nullptr,
                 [](const ParamSet& p) {
                     auto t = target_params(p);
                     return prob(qtf_ub_asymptotic(t), log_qtf_ub_asymptotic(t));
                 }});
    q.push_back({"QTF_CN", true,
                 "sum-frequency-generation CN receiver error",
                 needs_thermal_background,
                 [](const ParamSet& p) {
                     auto t = target_params(p);
                     return prob(qtf_cn_error(t), log_qtf_cn_error(t));
                 }});
    q.push_back({"QTF_CN_ASYM", true,
                 "exponential asymptote of QTF_CN",
                 needs_thermal_background,
                 [](const ParamSet& p) {
                     auto t = target_params(p);
                     return prob(qtf_cn_asymptotic(t), log_qtf_cn_asymptotic(t));
                 }});
    q.push_back({"ZETA_SFG", true,
                 "per-sector no-count probability of the SFG receiver",
                 needs_thermal_background,
                 [](const ParamSet& p) {
                     auto t = target_params(p);
                     return prob(sfg_error_pair(t).zeta1, log_sfg_error_pair(t).log_zeta1);
                 }});
    return q;
}

std::vector<QuantityDesc> make_generic_quantities() {
    std::vector<QuantityDesc> q;
    auto pair_of = [](const ParamSet& p) {
        return ErrorPair{p.get("zeta1"), p.get("zeta2")};
    };
    auto log_pair_of = [](const ParamSet& p) {
        return LogErrorPair{std::log(p.get("zeta1")), std::log(p.get("zeta2"))};
    };
    q.push_back({"P_CN", true,
                 "conditional-nulling receiver error in closed form",
                 nullptr,
                 [pair_of, log_pair_of](const ParamSet& p) {
                     return prob(cn_error(p.get_int("m"), pair_of(p)),
                                 log_cn_error(p.get_int("m"), log_pair_of(p)));
                 }});
    q.push_back({"P_CN_ASYM", true,
                 "leading term (m-1) zeta1 zeta2 / 2",
                 nullptr,
                 [pair_of, log_pair_of](const ParamSet& p) {
                     return prob(cn_asymptotic(p.get_int("m"), pair_of(p)),
                                 log_cn_asymptotic(p.get_int("m"), log_pair_of(p)));
                 }});
    q.push_back({"P_NFF", true,
                 "no-feed-forward baseline (m-1) zeta2 / m",
                 nullptr,
                 [](const ParamSet& p) {
                     return prob(no_feedforward(p.get_int("m"), p.get("zeta2")),
                                 log_no_feedforward(p.get_int("m"), std::log(p.get("zeta2"))));
                 }});
    q.push_back({"P_CN_MC", true,
                 "Monte Carlo run of the receiver protocol",
                 [](const std::map<std::string, double>& fixed,
                    const std::set<std::string>& swept) -> std::optional<std::string> {
                     (void)swept;
                     auto it = fixed.find("trials");
                     if (it != fixed.end() && it->second < 1) return "requires trials >= 1";
                     return std::nullopt;
                 },
                 [pair_of](const ParamSet& p) {
                     auto r = cn_monte_carlo(p.get_int("m"), pair_of(p), p.get_u64("trials"),
                                             p.get_u64("seed"));
                     return from_result(r, std::log(r.value));
                 }});
    return q;
}

} // namespace

const std::vector<QuantityDesc>& application_quantities(Application app) {
    static const std::vector<QuantityDesc> reading = make_reading_quantities(false);
    static const std::vector<QuantityDesc> reading_star = make_reading_quantities(true);
    static const std::vector<QuantityDesc> binary = make_binary_quantities();
    static const std::vector<QuantityDesc> target = make_target_quantities();
    static const std::vector<QuantityDesc> generic = make_generic_quantities();
    switch (app) {
    case Application::reading: return reading;
    case Application::reading_star: return reading_star;
    case Application::binary_reading: return binary;
    case Application::target_finding: return target;
    case Application::generic_cn: return generic;
    }
    return reading;
}

const QuantityDesc& find_quantity(Application app, const std::string& name) {
    for (const auto& d : application_quantities(app))
        if (d.name == name) return d;
    throw ConfigError("quantities", "unknown quantity '" + name + "' for application '" +
                                        application_name(app) +
                                        "' (valid: " + quantity_list(app) + ")");
}

std::string quantity_list(Application app) {
    std::string s;
    for (const auto& d : application_quantities(app)) {
        if (!s.empty()) s += ", ";
        s += d.name;
    }
    return s;
}

} // namespace cpf::cli
