#include "cpfcli/verify.hpp"

#include "cpfcli/csv.hpp"
#include "cpfcli/registry.hpp"

#include <cpf/channels.hpp>
#include <cpf/fock_oracle.hpp>
#include <cpf/gaussian_state.hpp>
#include <cpf/rng.hpp>
#include <cpf/tolerances.hpp>

#include <cmath>
#include <complex>
#include <ostream>

namespace cpf::cli {

CnSuiteReport run_cn_suite(std::uint64_t trials, std::uint64_t seed) {
    static const struct {
        int m;
        ErrorPair pair;
    } cases[] = {
        {2, {0.3, 0.3}},
        {50, {0.05, 0.2}},
        {100, {0.1, 0.1}},
    };

    CnSuiteReport report;
    report.trials = trials;
    report.seed = seed;
    report.pass = true;
    std::uint64_t stream = 0;
    for (const auto& c : cases) {
        CnSuiteCase out;
        out.m = c.m;
        out.pair = c.pair;
        out.exact = cn_error(c.m, c.pair);
        const auto mc = cn_monte_carlo(c.m, c.pair, trials, seed + stream++);
        out.estimate = mc.value;
        out.std_error = mc.std_error;
        out.deviation_sigmas =
            mc.std_error > 0.0 ? std::abs(out.estimate - out.exact) / mc.std_error
                               : (out.estimate == out.exact ? 0.0 : INFINITY);
        out.pass = out.deviation_sigmas < 3.0;
        report.pass = report.pass && out.pass;
        report.cases.push_back(out);
    }
    return report;
}

namespace {

Eigen::Matrix2d squeeze_symplectic(double r) {
    Eigen::Matrix2d s;
    s << std::exp(r), 0.0, 0.0, std::exp(-r);
    return s;
}

Eigen::Matrix2d phase_symplectic(double theta) {
    // a -> e^{-i theta} a, matching phase_operator
    Eigen::Matrix2d s;
    s << std::cos(theta), std::sin(theta), -std::sin(theta), std::cos(theta);
    return s;
}

// Displaced squeezed thermal state, both pictures. Order: thermal ->
// squeeze -> rotate -> displace.
struct OneModeDraw {
    GaussianState gauss;
    FockState fock;
};

OneModeDraw draw_one_mode(Rng& rng, int cutoff) {
    const double n_mean = 0.8 * rng.next_double();
    const double r = -0.4 + 0.8 * rng.next_double();
    const double theta = 6.283185307179586477 * rng.next_double();
    const double amp = std::sqrt(rng.next_double());
    const double phi = 6.283185307179586477 * rng.next_double();
    const std::complex<double> alpha = amp * std::complex<double>(std::cos(phi), std::sin(phi));

    OneModeDraw d{thermal_state(n_mean), thermal_fock(n_mean, cutoff)};
    const Eigen::Matrix2d s = phase_symplectic(theta) * squeeze_symplectic(r);
    d.gauss = apply_symplectic(SymplecticOp{s}, d.gauss);
    d.gauss.mean(0) += 2.0 * alpha.real();
    d.gauss.mean(1) += 2.0 * alpha.imag();

    const int dim = cutoff + 1;
    d.fock = apply_unitary(d.fock, squeeze_operator(r, dim));
    d.fock = apply_unitary(d.fock, phase_operator(theta, dim));
    d.fock = apply_unitary(d.fock, displacement_operator(alpha, dim));
    return d;
}

// Displaced lossy two-mode squeezed vacuum. Order: TMSV -> loss on each
// mode -> displace each mode.
OneModeDraw draw_two_mode(Rng& rng, int cutoff) {
    const double n_s = 0.05 + 0.3 * rng.next_double();
    const double r0 = 0.3 + 0.7 * rng.next_double();
    const double r1 = 0.3 + 0.7 * rng.next_double();
    std::complex<double> alpha[2];
    for (auto& a : alpha) {
        const double amp = std::sqrt(0.25 * rng.next_double());
        const double phi = 6.283185307179586477 * rng.next_double();
        a = amp * std::complex<double>(std::cos(phi), std::sin(phi));
    }

    OneModeDraw d{tmsv_state(n_s), tmsv_fock(n_s, cutoff)};
    d.gauss = apply_to_gaussian(thermal_loss(r0, 0.0), d.gauss, 0);
    d.gauss = apply_to_gaussian(thermal_loss(r1, 0.0), d.gauss, 1);
    for (int mode = 0; mode < 2; ++mode) {
        d.gauss.mean(2 * mode) += 2.0 * alpha[mode].real();
        d.gauss.mean(2 * mode + 1) += 2.0 * alpha[mode].imag();
    }

    const int dim = cutoff + 1;
    d.fock = loss_channel_fock(d.fock, r0, 0);
    d.fock = loss_channel_fock(d.fock, r1, 1);
    d.fock = apply_mode_unitary(d.fock, displacement_operator(alpha[0], dim), 0);
    d.fock = apply_mode_unitary(d.fock, displacement_operator(alpha[1], dim), 1);
    return d;
}

} // namespace

FidelitySuiteReport run_fidelity_suite(int pairs, std::uint64_t seed) {
    constexpr int one_mode_cutoff = 60;
    constexpr int two_mode_cutoff = 18;

    FidelitySuiteReport report;
    report.tolerance = tol::fidelity_vs_fock;
    for (int i = 0; i < pairs; ++i) {
        Rng rng(rng_substream(seed, static_cast<std::uint64_t>(i)));
        double closed = 0.0;
        double oracle = 0.0;
        const bool two_mode = (i % 2) != 0;
        if (two_mode) {
            const auto a = draw_two_mode(rng, two_mode_cutoff);
            const auto b = draw_two_mode(rng, two_mode_cutoff);
            closed = fidelity_two_mode(a.gauss, b.gauss);
            oracle = uhlmann_fidelity(a.fock, b.fock);
            ++report.two_mode_pairs;
        } else {
            const auto a = draw_one_mode(rng, one_mode_cutoff);
            const auto b = draw_one_mode(rng, one_mode_cutoff);
            closed = fidelity_one_mode(a.gauss, b.gauss);
            oracle = uhlmann_fidelity(a.fock, b.fock);
            ++report.one_mode_pairs;
        }
        const double dev = std::abs(closed - oracle);
        if (dev > report.max_dev) {
            report.max_dev = dev;
            report.worst_kind = two_mode ? "two-mode" : "one-mode";
            report.worst_index = i;
        }
    }
    report.pass = report.max_dev < report.tolerance;
    return report;
}

DdSuiteReport run_dd_suite(int m, std::uint64_t trials, std::uint64_t seed) {
    DdSuiteReport report;
    report.params.m = m;
    report.params.M = 10.0;
    report.params.n_s = 0.01;
    report.params.eta = 0.1;
    report.params.n_b = 2.0;
    report.trials = trials;
    report.seed = seed;
    report.closed_form = dd_error(report.params);

    const double signal = report.params.eta * report.params.M * report.params.n_s;
    const auto target =
        sample_displaced_thermal_counts(signal, report.params.n_b, 1, trials, rng_substream(seed, 1));
    const auto background =
        sample_thermal_counts(report.params.n_b, m - 1, trials, rng_substream(seed, 2));
    Rng tie(rng_substream(seed, 3));

    std::uint64_t errors = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        const std::uint32_t ct = target.at(t, 0);
        std::uint32_t best = 0;
        int ties = 0;
        for (int k = 0; k < m - 1; ++k) {
            const std::uint32_t c = background.at(t, k);
            if (c > best) {
                best = c;
                ties = 1;
            } else if (c == best) {
                ++ties;
            }
        }
        if (ct > best) continue;
        if (ct < best) {
            ++errors;
            continue;
        }
        // target tied with `ties` backgrounds; slot 0 of the uniform draw
        // is the target
        if (tie.next_below(static_cast<std::uint64_t>(ties) + 1) != 0) ++errors;
    }

    report.estimate = static_cast<double>(errors) / static_cast<double>(trials);
    report.std_error =
        std::sqrt(report.estimate * (1.0 - report.estimate) / static_cast<double>(trials));
    report.deviation_sigmas =
        report.std_error > 0.0
            ? std::abs(report.estimate - report.closed_form) / report.std_error
            : (report.estimate == report.closed_form ? 0.0 : INFINITY);
    report.pass = report.deviation_sigmas < 3.0;
    return report;
}

int run_verify(const std::string& suite, std::optional<double> trials,
               std::optional<std::uint64_t> seed, std::optional<int> m, std::ostream& out) {
    auto trials_or = [&](double fallback) {
        const double t = trials.value_or(fallback);
        if (t < 1 || t > 1e12 || t != std::floor(t))
            throw ConfigError("--trials", "must be a positive integer (got " + format_double(t) +
                                              ")");
        return static_cast<std::uint64_t>(t);
    };

    if (suite == "cn") {
        const auto report = run_cn_suite(trials_or(1e6), seed.value_or(7));
        for (const auto& c : report.cases)
            out << "cn m=" << c.m << " zeta1=" << format_double(c.pair.zeta1)
                << " zeta2=" << format_double(c.pair.zeta2) << ": exact "
                << format_double(c.exact) << ", mc " << format_double(c.estimate) << " +- "
                << format_double(c.std_error) << " (" << format_double(c.deviation_sigmas)
                << " sigma) " << (c.pass ? "PASS" : "FAIL") << "\n";
        out << "cn suite: trials=" << report.trials << " seed=" << report.seed << " rng="
            << rng_algorithm_name << " -> " << (report.pass ? "PASS" : "FAIL") << "\n";
        return report.pass ? 0 : 1;
    }
    if (suite == "fidelity") {
        const int pairs = static_cast<int>(trials_or(100));
        const auto report = run_fidelity_suite(pairs, seed.value_or(42));
        out << "fidelity: " << report.one_mode_pairs << " one-mode + " << report.two_mode_pairs
            << " two-mode pairs, max |F2_closed - F2_fock| = " << format_double(report.max_dev)
            << " (" << report.worst_kind << " pair " << report.worst_index << "), tolerance "
            << format_double(report.tolerance) << "\n";
        out << "fidelity suite: " << (report.pass ? "PASS" : "FAIL") << "\n";
        return report.pass ? 0 : 1;
    }
    if (suite == "dd") {
        const auto report = run_dd_suite(m.value_or(5), trials_or(1e6), seed.value_or(99));
        out << "dd m=" << report.params.m << " M=" << format_double(report.params.M)
            << " N_S=" << format_double(report.params.n_s)
            << " eta=" << format_double(report.params.eta)
            << " N_B=" << format_double(report.params.n_b) << ": closed form "
            << format_double(report.closed_form) << ", mc " << format_double(report.estimate)
            << " +- " << format_double(report.std_error) << " ("
            << format_double(report.deviation_sigmas) << " sigma)\n";
        out << "dd suite: trials=" << report.trials << " seed=" << report.seed << " rng="
            << rng_algorithm_name << " -> " << (report.pass ? "PASS" : "FAIL") << "\n";
        return report.pass ? 0 : 1;
    }
    throw ConfigError("suite", "unknown suite '" + suite + "' (valid: cn, fidelity, dd)");
}

} // namespace cpf::cli
