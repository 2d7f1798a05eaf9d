#pragma once

#include <cstdint>
#include <string>

// Generic m-ary discrimination machinery for geometrically uniform
// ensembles: pure-state Helstrom limit, fidelity-based bounds, the
// generalized conditional-nulling (CN) receiver in closed form, by
// recursion and by Monte Carlo, and the no-feed-forward baseline.
//
// Probabilities in the sweeps span hundreds of decades, so every bound
// here has a log-space twin returning ln P and taking log-space inputs
// where the linear input itself can underflow.

namespace cpf {

// Type-I / type-II error probabilities of the two partially-unambiguous
// POVMs the CN receiver is built from: zeta1 = P(fire on background),
// zeta2 = P(miss the target).
struct ErrorPair {
    double zeta1 = 0.0;
    double zeta2 = 0.0;
};

// Same pair in log space, for regimes where the zetas underflow.
struct LogErrorPair {
    double log_zeta1 = 0.0;
    double log_zeta2 = 0.0;
};

enum class ResultKind { exact, upper_bound, lower_bound, asymptotic, monte_carlo };

struct DiscriminationResult {
    double value = 0.0;
    ResultKind kind = ResultKind::exact;
    bool clamped = false; // an upper bound hit the value-1 clamp
    // Monte Carlo detail (zero / empty otherwise).
    std::uint64_t trials = 0;
    double std_error = 0.0;
    std::uint64_t seed = 0;
    std::string rng_algorithm;
};

// Helstrom limit for m equiprobable pure states with pairwise overlap
// zeta = |<psi_i|psi_j>|^2, i != j (GUS ensemble):
//   (m-1)/m^2 [sqrt(1+(m-1) zeta) - sqrt(1-zeta)]^2.
// Evaluated in the difference-free form
//   (m-1) zeta^2 / [sqrt(1+(m-1) zeta) + sqrt(1-zeta)]^2
// to avoid cancellation at small zeta. Throws std::domain_error if m < 2.
double helstrom_gus_pure(int m, double zeta);
double log_helstrom_gus_pure(int m, double log_zeta);

// Leading term (1/4)(m-1) zeta^2, valid for m zeta << 1.
double helstrom_gus_pure_asymptotic(int m, double zeta);

// Fidelity bounds for m-ary GUS discrimination, with F the (squared,
// per the calling convention of the CPF pipelines) fidelity between the
// target and background output states:
//   upper: min(1, (m-1) F)       lower: (m-1)/(2m) F^2
double barnum_ub(int m, double fidelity);
double log_barnum_ub(int m, double log_fidelity); // clamped at ln 1 = 0
double fidelity_lb(int m, double fidelity);
double log_fidelity_lb(int m, double log_fidelity);

// Wrap a raw upper-bound value, clamping to 1 and tagging the clamp.
DiscriminationResult clamp_upper_bound(double raw_value);

// Error probability of the generalized CN receiver on m hypotheses:
//   P = (1/m)(zeta2/zeta1) [m zeta1 + (1-zeta1)^m - 1]
// For m zeta1 < 1/2 the bracket is summed as the alternating binomial
// series starting at the k=2 term (the raw form loses all digits when
// zeta1 -> 0); the two branches agree to ~1e-15 at the switchover.
// m = 1 returns 0.
double cn_error(int m, ErrorPair e);
double log_cn_error(int m, LogErrorPair e);

// Same quantity through the recursion P_k = ((k-1)/k)[(1-zeta1) P_{k-1}
// + zeta1 zeta2], P_1 = 0. Kept as an independent cross-check of
// cn_error; the two agree to 1e-12 relative.
double cn_error_recursive(int m, ErrorPair e);

// Leading term (m-1) zeta1 zeta2 / 2, valid for m zeta1 << 1.
double cn_asymptotic(int m, ErrorPair e);
double log_cn_asymptotic(int m, LogErrorPair e);

// Error probability without feed-forward: (m-1) zeta2 / m. Always an
// upper bound on cn_error at equal zeta2.
double no_feedforward(int m, double zeta2);
double log_no_feedforward(int m, double log_zeta2);

// Simulates the CN measurement sequence directly: scan the subsystems
// with the t-POVM (fires on the target surely, on a background with
// probability zeta1), on a fire confirm the remainder with the b-POVM
// (never fires on a background, misses the target with probability
// zeta2; a miss selects the scanned subsystem, a fire the confirming
// one), and select the last hypothesis if the scan passes through m-1
// subsystems without firing. Deterministic given (trials, seed); trials
// are split into chunks with per-chunk substreams, so the result is
// also independent of thread count.
DiscriminationResult cn_monte_carlo(int m, ErrorPair e, std::uint64_t trials,
                                    std::uint64_t seed);

} // namespace cpf
