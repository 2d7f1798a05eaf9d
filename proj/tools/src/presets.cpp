#include "cpfcli/presets.hpp"

namespace cpf::cli {

namespace {

SweepSpec reading_m_sweep(const char* name, double r_b, double r_t, double m_stop, int points) {
    SweepSpec s;
    s.application = Application::reading;
    s.fixed = {{"m", 100}, {"N_S", 5}, {"r_B", r_b}, {"r_T", r_t}};
    s.sweep = {"M", 1.0, m_stop, points, true};
    s.quantities = {"P_CN_QR", "P_H_CR", "P_HLB_CR"};
    s.preset_name = name;
    s.output_path = std::string(name) + ".csv";
    s.notes = {"error probability versus modes per cell, entangled vs classical reading",
               "M grid is log-spaced to span the figure's axis range"};
    return s;
}

SweepSpec star_m_sweep(const char* name, double r_t, double m_stop, int points) {
    SweepSpec s;
    s.application = Application::reading_star;
    s.fixed = {{"m", 100}, {"N_S", 5}, {"r_B", 1.0}, {"r_T", r_t}};
    s.sweep = {"M", 1.0, m_stop, points, true};
    s.quantities = {"P_CNS_QR", "P_CN_QR", "P_H_CR", "P_HLB_CR"};
    s.preset_name = name;
    s.output_path = std::string(name) + ".csv";
    s.notes = {"ideal background r_B = 1: improved receiver against the standard set",
               "M grid is log-spaced to span the figure's axis range"};
    return s;
}

SweepSpec binary_m_sweep(const char* name, double n_s, double m_stop, int points) {
    SweepSpec s;
    s.application = Application::binary_reading;
    s.fixed = {{"N_S", n_s}, {"r_B", 1.0}, {"r_T", 0.4}};
    s.sweep = {"M", 1.0, m_stop, points, true};
    s.quantities = {"P_CN", "P_CNS"};
    s.preset_name = name;
    s.output_path = std::string(name) + ".csv";
    s.notes = {"binary quantum reading, unambiguous receivers only",
               "the source figure's Bell-receiver and quantum-Chernoff-bound curves are out of scope here",
               "M grid is log-spaced to span the figure's axis range"};
    return s;
}

} // namespace

std::vector<std::string> preset_names() {
    return {"fig2a", "fig2b", "fig2c", "fig3a", "fig3b", "fig3c", "fig4a", "fig4b", "fig5"};
}

SweepSpec make_preset(const std::string& name) {
    if (name == "fig2a") {
        SweepSpec s;
        s.application = Application::reading;
        s.fixed = {{"m", 100}, {"N_S", 5}, {"M", 10}};
        s.sweep = {"r_B", 0.0, 1.0, 51, false};
        s.sweep2 = SweepAxis{"r_T", 0.0, 1.0, 51, false};
        s.quantities = {"LOG10_RATIO_CN_HCR"};
        s.preset_name = "fig2a";
        s.output_path = "fig2a.csv";
        s.notes = {"log ratio of the nulling-receiver error to the classical Helstrom limit",
                   "long format: one row per (r_B, r_T) grid cell"};
        return s;
    }
    if (name == "fig2b") return reading_m_sweep("fig2b", 0.95, 0.9, 1000.0, 61);
    if (name == "fig2c") return reading_m_sweep("fig2c", 1.0, 0.4, 100.0, 41);
    if (name == "fig3a") {
        SweepSpec s;
        s.application = Application::reading_star;
        s.fixed = {{"m", 100}, {"r_B", 1.0}};
        s.sweep = {"r_T", 0.0, 1.0, 51, false};
        s.sweep2 = SweepAxis{"N_S", 0.01, 10.0, 46, true};
        s.constraint = ProductConstraint{"M", "N_S", 12.0};
        s.quantities = {"LOG10_RATIO_CNS_HCR"};
        s.preset_name = "fig3a";
        s.output_path = "fig3a.csv";
        s.notes = {"log ratio of the improved-receiver error to the classical Helstrom limit",
                   "M follows the fixed-energy constraint M * N_S = 12",
                   "long format: one row per (r_T, N_S) grid cell"};
        return s;
    }
    if (name == "fig3b") return star_m_sweep("fig3b", 0.95, 2000.0, 61);
    if (name == "fig3c") return star_m_sweep("fig3c", 0.4, 100.0, 41);
    if (name == "fig4a") return binary_m_sweep("fig4a", 0.1, 2000.0, 61);
    if (name == "fig4b") return binary_m_sweep("fig4b", 10.0, 100.0, 41);
    if (name == "fig5") {
        SweepSpec s;
        s.application = Application::target_finding;
        s.fixed = {{"m", 50}, {"N_S", 1e-3}, {"N_B", 20}, {"eta", 0.1}};
        s.sweep = {"M", 1e5, 1e7, 41, true};
        s.quantities = {"CTF_DD", "CTF_LB", "QTF_UB", "QTF_CN"};
        s.preset_name = "fig5";
        s.output_path = "fig5.csv";
        s.notes = {"target finding: direct detection and classical bound vs entangled receiver",
                   "M grid is log-spaced to span the figure's axis range"};
        return s;
    }
    std::string names;
    for (const auto& n : preset_names()) {
        if (!names.empty()) names += ", ";
        names += n;
    }
    throw ConfigError("preset", "unknown preset '" + name + "' (valid: " + names + ")");
}

} // namespace cpf::cli
