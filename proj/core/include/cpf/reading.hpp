#pragma once

#include "gus.hpp"

#include <optional>

// Position-based quantum reading: one of m memory cells has reflectivity
// r_t, the others r_b, each probed by M modes of mean photon number n_s
// (signal arm of a TMSV in the entangled strategy), with optional
// environmental thermal noise such that the induced noise is n_b on
// every cell (no passive signature).
//
// Every probability has a log-space twin: at large M * n_s the error
// exponents reach the thousands and the linear values underflow.

namespace cpf {

struct ReadingParams {
    int m = 2;      // number of cells
    double M = 1.0; // probe modes per cell
    double n_s = 0.0;
    double r_b = 1.0;
    double r_t = 0.0;
    double n_b = 0.0; // 0 = pure-loss setting
};

// |<sqrt(r_b) alpha | sqrt(r_t) alpha>|^2 = exp(-M n_s (sqrt(r_b)-sqrt(r_t))^2),
// the pairwise overlap of the coherent-probe output ensemble. Pure-loss
// only; throws std::invalid_argument when n_b > 0 (mixed outputs have no
// overlap in this sense).
double overlap_classical(const ReadingParams& p);
double log_overlap_classical(const ReadingParams& p);

// Exact Helstrom limit of the optimal classical (coherent-state) source:
// helstrom_gus_pure(m, overlap_classical). Pure-loss only.
double classical_helstrom(const ReadingParams& p);
double log_classical_helstrom(const ReadingParams& p);

// Lower bound on any classical strategy, valid for all n_b:
//   (m-1)/(2m) exp(-2 M (sqrt(r_b)-sqrt(r_t))^2 n_s / (2 n_b + 1)).
double classical_lb(const ReadingParams& p);
double log_classical_lb(const ReadingParams& p);

// Entangled-strategy upper bound (m-1) [F^2_pair]^M with F^2_pair the
// squared fidelity between single-pair TMSV outputs through the two
// cells, computed via fidelity_two_mode; clamped to 1 and tagged.
DiscriminationResult quantum_ub(const ReadingParams& p);
double log_quantum_ub(const ReadingParams& p); // clamped at 0

// Exponential asymptote of quantum_ub for n_s << 1 at fixed M n_s:
//   (m-1) exp(-2 M n_s (1 + n_b - sqrt(H) - sqrt(r_b r_t)) / (1 + n_b)),
//   H = (1 + n_b - r_b)(1 + n_b - r_t).
double quantum_ub_asymptotic(const ReadingParams& p);
double log_quantum_ub_asymptotic(const ReadingParams& p);

// Strength of the two-mode squeezer that maps the signal mode of
// (L_r x I) TMSV(n_s) back to vacuum:
//   1/2 ln[(sqrt(n_s+1) - sqrt(r n_s)) / (sqrt(n_s+1) + sqrt(r n_s))].
// Negative for r, n_s > 0; feed it to two_mode_squeezer as is.
double squeeze_strength(double r, double n_s);

// Mean photon number left in the signal mode when the nulling squeezer
// matched to reflectivity r_a hits the state produced by reflectivity
// r_b: n_s(n_s+1)(sqrt(r_a)-sqrt(r_b))^2 / (1 + n_s(1-r_a)).
// Asymmetric in (r_a, r_b): ordering (r_b, r_t) gives the type-II and
// (r_t, r_b) the type-I statistics below.
double residual_thermal(double n_s, double r_a, double r_b);

// CN receiver error pair for pure-loss reading: probability of zero
// photon counts across M idler-nulled modes,
//   zeta2 = [1 + residual_thermal(n_s, r_b, r_t)]^(-M)   (target missed)
//   zeta1 = [1 + residual_thermal(n_s, r_t, r_b)]^(-M)   (background fires)
// Throws std::invalid_argument when n_b > 0 (no receiver construction
// in the noisy setting; only the fidelity bounds apply there).
ErrorPair cn_error_pair(const ReadingParams& p);
LogErrorPair log_cn_error_pair(const ReadingParams& p);

// cn_error(m, cn_error_pair(p)). Degenerate r_b = r_t returns the
// guessing value (m-1)/m (the formulas are continuous there).
double cn_reading_error(const ReadingParams& p);
double log_cn_reading_error(const ReadingParams& p);

// Improved pair when one reflectivity is exactly 1 and the idler of the
// scanned cell is measured jointly with the signal: the nulled output is
// then pure, and the zero-count probability sharpens to
//   r_b = 1:  zeta2* = [1 + n_s(1 - sqrt(r_t))]^(-2M), zeta1* = zeta1
//   r_t = 1:  zeta1* = [1 + n_s(1 - sqrt(r_b))]^(-2M), zeta2* = zeta2
// Throws std::invalid_argument unless exactly r_b = 1 or r_t = 1 (both
// equal to 1 is the degenerate identical-channel case and allowed).
ErrorPair cn_star_error_pair(const ReadingParams& p);
LogErrorPair log_cn_star_error_pair(const ReadingParams& p);

// cn_error(m, cn_star_error_pair(p)); never worse than cn_reading_error
// on its domain.
double cn_star_error(const ReadingParams& p);
double log_cn_star_error(const ReadingParams& p);

// Binary (m = 2) reading with the one-shot unambiguous receiver:
// error zeta1/2 with the standard pair, zeta1*/2 with the improved pair
// when r_b = 1 (absent otherwise). Requires r_b > r_t.
struct BinaryReadingErrors {
    double cn = 0.0;
    std::optional<double> cn_star; // only when r_b = 1
};
BinaryReadingErrors binary_reading_errors(const ReadingParams& p);
// Same fields holding ln P.
BinaryReadingErrors log_binary_reading_errors(const ReadingParams& p);

// Ratio of the noisy quantum upper-bound error exponent to the noisy
// classical lower-bound exponent,
//   eps_qr / eps_cr, eps_cr = 2 (sqrt(r_b)-sqrt(r_t))^2 / (2 n_b + 1),
//   eps_qr = 2 (1 + n_b - sqrt(H) - sqrt(r_b r_t)) / (1 + n_b).
// Always > 1; approaches 1 + 1/(2 n_b) as r_b, r_t -> 1. Requires
// n_b > 0 and r_b != r_t.
double noisy_exponent_ratio(const ReadingParams& p);

} // namespace cpf
