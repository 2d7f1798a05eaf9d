#include "cpf/reading.hpp"

#include "cpf/channels.hpp"
#include "cpf/gaussian_state.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cpf {

namespace {

void validate(const ReadingParams& p) {
    if (p.m < 2) throw std::domain_error("reading: m must be >= 2");
    if (!(p.M >= 0.0)) throw std::domain_error("reading: M must be >= 0");
    if (!(p.n_s >= 0.0)) throw std::domain_error("reading: n_s must be >= 0");
    if (!(p.r_b >= 0.0 && p.r_b <= 1.0) || !(p.r_t >= 0.0 && p.r_t <= 1.0))
        throw std::domain_error("reading: reflectivities must be in [0,1]");
    if (!(p.n_b >= 0.0)) throw std::domain_error("reading: n_b must be >= 0");
}

void require_pure_loss(const ReadingParams& p, const char* what) {
    if (p.n_b > 0.0)
        throw std::invalid_argument(std::string(what) +
                                    " is only defined in the pure-loss "
                                    "setting (n_b = 0)");
}

double root_diff_sq(const ReadingParams& p) {
    const double d = std::sqrt(p.r_b) - std::sqrt(p.r_t);
    return d * d;
}

// ln F^2 between the two single-pair TMSV outputs, through the actual
// channel pipeline (tmsv -> thermal loss on the signal mode -> fidelity).
double log_pair_fidelity(const ReadingParams& p) {
    const auto [target, background] = reading_channels(p.r_b, p.r_t, p.n_b);
    const GaussianState probe = tmsv_state(p.n_s);
    const GaussianState out_t = apply_to_gaussian(target, probe, 0);
    const GaussianState out_b = apply_to_gaussian(background, probe, 0);
    return log_fidelity_two_mode(out_t, out_b);
}

// Exponent (positive) of the noisy quantum upper-bound asymptote.
double quantum_ub_exponent(const ReadingParams& p) {
    const double h =
        (1.0 + p.n_b - p.r_b) * (1.0 + p.n_b - p.r_t);
    return 2.0 * p.M * p.n_s *
           (1.0 + p.n_b - std::sqrt(h) - std::sqrt(p.r_b * p.r_t)) /
           (1.0 + p.n_b);
}

} // namespace

double overlap_classical(const ReadingParams& p) {
    return std::exp(log_overlap_classical(p));
}

double log_overlap_classical(const ReadingParams& p) {
    validate(p);
    require_pure_loss(p, "the coherent-state overlap");
    return -p.M * p.n_s * root_diff_sq(p);
}

double classical_helstrom(const ReadingParams& p) {
    return helstrom_gus_pure(p.m, overlap_classical(p));
}

double log_classical_helstrom(const ReadingParams& p) {
    return log_helstrom_gus_pure(p.m, log_overlap_classical(p));
}

double classical_lb(const ReadingParams& p) {
    validate(p);
    return (p.m - 1.0) / (2.0 * p.m) *
           std::exp(-2.0 * p.M * root_diff_sq(p) * p.n_s /
                    (2.0 * p.n_b + 1.0));
}

double log_classical_lb(const ReadingParams& p) {
    validate(p);
    return std::log((p.m - 1.0) / (2.0 * p.m)) -
           2.0 * p.M * root_diff_sq(p) * p.n_s / (2.0 * p.n_b + 1.0);
}

DiscriminationResult quantum_ub(const ReadingParams& p) {
    validate(p);
    return clamp_upper_bound(
        std::exp(std::log(p.m - 1.0) + p.M * log_pair_fidelity(p)));
}

double log_quantum_ub(const ReadingParams& p) {
    validate(p);
    return std::min(0.0, std::log(p.m - 1.0) + p.M * log_pair_fidelity(p));
}

double quantum_ub_asymptotic(const ReadingParams& p) {
    validate(p);
    // Asymptote of a bound; not clamped, may exceed 1 outside its regime.
    return (p.m - 1.0) * std::exp(-quantum_ub_exponent(p));
}

double log_quantum_ub_asymptotic(const ReadingParams& p) {
    validate(p);
    return std::log(p.m - 1.0) - quantum_ub_exponent(p);
}

double squeeze_strength(double r, double n_s) {
    if (!(r >= 0.0 && r <= 1.0))
        throw std::domain_error("squeeze_strength: r must be in [0,1]");
    if (!(n_s >= 0.0))
        throw std::domain_error("squeeze_strength: n_s must be >= 0");
    const double a = std::sqrt(n_s + 1.0);
    const double b = std::sqrt(r * n_s);
    return 0.5 * std::log((a - b) / (a + b));
}

double residual_thermal(double n_s, double r_a, double r_b) {
    if (!(r_a >= 0.0 && r_a <= 1.0) || !(r_b >= 0.0 && r_b <= 1.0))
        throw std::domain_error("residual_thermal: reflectivities in [0,1]");
    if (!(n_s >= 0.0))
        throw std::domain_error("residual_thermal: n_s must be >= 0");
    const double d = std::sqrt(r_a) - std::sqrt(r_b);
    return n_s * (n_s + 1.0) * d * d / (1.0 + n_s * (1.0 - r_a));
}

ErrorPair cn_error_pair(const ReadingParams& p) {
    const LogErrorPair lp = log_cn_error_pair(p);
    return {std::exp(lp.log_zeta1), std::exp(lp.log_zeta2)};
}

LogErrorPair log_cn_error_pair(const ReadingParams& p) {
    validate(p);
    require_pure_loss(p, "the CN receiver error pair");
    return {-p.M * std::log1p(residual_thermal(p.n_s, p.r_t, p.r_b)),
            -p.M * std::log1p(residual_thermal(p.n_s, p.r_b, p.r_t))};
}

double cn_reading_error(const ReadingParams& p) {
    return cn_error(p.m, cn_error_pair(p));
}

double log_cn_reading_error(const ReadingParams& p) {
    return log_cn_error(p.m, log_cn_error_pair(p));
}

namespace {

// Improved zero-count exponent when the scanned cell is lossless and its
// output stays pure: ln zeta* = -2M ln(1 + n_s(1 - sqrt(r_other))).
double log_zeta_star(const ReadingParams& p, double r_other) {
    return -2.0 * p.M * std::log1p(p.n_s * (1.0 - std::sqrt(r_other)));
}

} // namespace

ErrorPair cn_star_error_pair(const ReadingParams& p) {
    const LogErrorPair lp = log_cn_star_error_pair(p);
    return {std::exp(lp.log_zeta1), std::exp(lp.log_zeta2)};
}

LogErrorPair log_cn_star_error_pair(const ReadingParams& p) {
    validate(p);
    require_pure_loss(p, "the improved CN receiver error pair");
    if (p.r_b != 1.0 && p.r_t != 1.0)
        throw std::invalid_argument(
            "the improved receiver requires r_b = 1 or r_t = 1");
    LogErrorPair lp = log_cn_error_pair(p);
    if (p.r_b == 1.0)
        lp.log_zeta2 = log_zeta_star(p, p.r_t);
    else
        lp.log_zeta1 = log_zeta_star(p, p.r_b);
    return lp;
}

double cn_star_error(const ReadingParams& p) {
    return cn_error(p.m, cn_star_error_pair(p));
}

double log_cn_star_error(const ReadingParams& p) {
    return log_cn_error(p.m, log_cn_star_error_pair(p));
}

BinaryReadingErrors binary_reading_errors(const ReadingParams& p) {
    const BinaryReadingErrors lg = log_binary_reading_errors(p);
    BinaryReadingErrors out;
    out.cn = std::exp(lg.cn);
    if (lg.cn_star) out.cn_star = std::exp(*lg.cn_star);
    return out;
}

BinaryReadingErrors log_binary_reading_errors(const ReadingParams& p) {
    validate(p);
    require_pure_loss(p, "binary reading");
    if (!(p.r_b > p.r_t))
        throw std::domain_error("binary reading assumes r_b > r_t");
    // One-shot unambiguous receiver: null the target-reflectivity
    // hypothesis, decide on zero counts; errs only on all-zero counts
    // under the background hypothesis, with probability zeta1 / 2.
    const double log_zeta1 =
        -p.M * std::log1p(residual_thermal(p.n_s, p.r_t, p.r_b));
    BinaryReadingErrors out;
    out.cn = log_zeta1 - std::log(2.0);
    if (p.r_b == 1.0) out.cn_star = log_zeta_star(p, p.r_t) - std::log(2.0);
    return out;
}

double noisy_exponent_ratio(const ReadingParams& p) {
    validate(p);
    if (!(p.n_b > 0.0))
        throw std::domain_error("noisy_exponent_ratio requires n_b > 0");
    if (p.r_b == p.r_t)
        throw std::domain_error(
            "noisy_exponent_ratio is undefined at r_b = r_t");
    const double eps_cr = 2.0 * root_diff_sq(p) / (2.0 * p.n_b + 1.0);
    const double h = (1.0 + p.n_b - p.r_b) * (1.0 + p.n_b - p.r_t);
    const double eps_qr = 2.0 *
                          (1.0 + p.n_b - std::sqrt(h) -
                           std::sqrt(p.r_b * p.r_t)) /
                          (1.0 + p.n_b);
    return eps_qr / eps_cr;
}

} // namespace cpf
