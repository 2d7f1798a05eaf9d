#include "cpf/gus.hpp"

#include "cpf/parallel.hpp"
#include "cpf/rng.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace cpf {

namespace {

constexpr double neg_inf = -std::numeric_limits<double>::infinity();

void require_unit_interval(double x, const char* name) {
    if (!(x >= 0.0 && x <= 1.0))
        throw std::domain_error(std::string(name) + " must be in [0,1]");
}

void require_m(int m, int least) {
    if (m < least)
        throw std::domain_error("m must be >= " + std::to_string(least));
}

// Sum of the alternating binomial tail starting at k = 2, normalized by
// the k = 2 term: S = sum_{k=2}^m (-1)^k C(m,k) z^k / (C(m,2) z^2).
// Converges fast for m z < 1/2 (term ratio bounded by m z / 3).
double normalized_binomial_tail(int m, double z) {
    double s = 1.0, t = 1.0;
    for (int k = 2; k < m; ++k) {
        t *= -(static_cast<double>(m - k) / (k + 1)) * z;
        s += t;
        if (std::abs(t) < 1e-18 * std::abs(s)) break;
    }
    return s;
}

} // namespace

double helstrom_gus_pure(int m, double zeta) {
    require_m(m, 2);
    require_unit_interval(zeta, "zeta");
    // Difference-free rewrite of (m-1)/m^2 [sqrt(1+(m-1)z) - sqrt(1-z)]^2.
    const double denom =
        std::sqrt(1.0 + (m - 1.0) * zeta) + std::sqrt(1.0 - zeta);
    const double q = zeta / denom;
    return (m - 1.0) * q * q;
}

double log_helstrom_gus_pure(int m, double log_zeta) {
    require_m(m, 2);
    if (log_zeta == neg_inf) return neg_inf;
    const double zeta = std::exp(log_zeta);
    const double denom =
        std::sqrt(1.0 + (m - 1.0) * zeta) + std::sqrt(1.0 - zeta);
    return std::log(m - 1.0) + 2.0 * (log_zeta - std::log(denom));
}

double helstrom_gus_pure_asymptotic(int m, double zeta) {
    require_m(m, 2);
    return 0.25 * (m - 1.0) * zeta * zeta;
}

double barnum_ub(int m, double fidelity) {
    require_m(m, 2);
    require_unit_interval(fidelity, "fidelity");
    return std::min(1.0, (m - 1.0) * fidelity);
}

double log_barnum_ub(int m, double log_fidelity) {
    require_m(m, 2);
    return std::min(0.0, std::log(m - 1.0) + log_fidelity);
}

double fidelity_lb(int m, double fidelity) {
    require_m(m, 2);
    require_unit_interval(fidelity, "fidelity");
    return (m - 1.0) / (2.0 * m) * fidelity * fidelity;
}

double log_fidelity_lb(int m, double log_fidelity) {
    require_m(m, 2);
    return std::log((m - 1.0) / (2.0 * m)) + 2.0 * log_fidelity;
}

DiscriminationResult clamp_upper_bound(double raw_value) {
    DiscriminationResult r;
    r.kind = ResultKind::upper_bound;
    r.clamped = raw_value > 1.0;
    r.value = r.clamped ? 1.0 : raw_value;
    return r;
}

double cn_error(int m, ErrorPair e) {
    require_m(m, 1);
    require_unit_interval(e.zeta1, "zeta1");
    require_unit_interval(e.zeta2, "zeta2");
    const double z1 = e.zeta1, z2 = e.zeta2;
    if (m == 1 || z1 == 0.0 || z2 == 0.0) return 0.0;
    if (m * z1 < 0.5) {
        // (1/m)(z2/z1)[m z1 + (1-z1)^m - 1]: the bracket is O((m z1)^2)
        // and cancels catastrophically, so sum its binomial expansion
        // from the k = 2 term instead.
        return 0.5 * (m - 1.0) * z1 * z2 * normalized_binomial_tail(m, z1);
    }
    const double bracket = m * z1 + std::expm1(m * std::log1p(-z1));
    return z2 * bracket / (m * z1);
}

double log_cn_error(int m, LogErrorPair e) {
    require_m(m, 1);
    const double l1 = e.log_zeta1, l2 = e.log_zeta2;
    if (l1 > 0.0 || l2 > 0.0)
        throw std::domain_error("log zetas must be <= 0");
    if (m == 1 || l1 == neg_inf || l2 == neg_inf) return neg_inf;
    const double z1 = std::exp(l1);
    if (m * z1 < 0.5) {
        // ln P = ln z1 + ln z2 + ln((m-1)/2) + ln S, exact even when the
        // zetas underflow (then S = 1 to double precision).
        return l1 + l2 + std::log(0.5 * (m - 1.0)) +
               std::log(normalized_binomial_tail(m, z1));
    }
    const double bracket = m * z1 + std::expm1(m * std::log1p(-z1));
    return l2 - l1 - std::log(static_cast<double>(m)) + std::log(bracket);
}

double cn_error_recursive(int m, ErrorPair e) {
    require_m(m, 1);
    require_unit_interval(e.zeta1, "zeta1");
    require_unit_interval(e.zeta2, "zeta2");
    double p = 0.0;
    for (int k = 2; k <= m; ++k)
        p = (k - 1.0) / k * ((1.0 - e.zeta1) * p + e.zeta1 * e.zeta2);
    return p;
}

double cn_asymptotic(int m, ErrorPair e) {
    require_m(m, 1);
    return 0.5 * (m - 1.0) * e.zeta1 * e.zeta2;
}

double log_cn_asymptotic(int m, LogErrorPair e) {
    require_m(m, 1);
    if (m == 1) return neg_inf;
    return std::log(0.5 * (m - 1.0)) + e.log_zeta1 + e.log_zeta2;
}

double no_feedforward(int m, double zeta2) {
    require_m(m, 1);
    require_unit_interval(zeta2, "zeta2");
    return (m - 1.0) * zeta2 / m;
}

double log_no_feedforward(int m, double log_zeta2) {
    require_m(m, 1);
    if (m == 1) return neg_inf;
    return std::log((m - 1.0) / m) + log_zeta2;
}

DiscriminationResult cn_monte_carlo(int m, ErrorPair e, std::uint64_t trials,
                                    std::uint64_t seed) {
    require_m(m, 1);
    require_unit_interval(e.zeta1, "zeta1");
    require_unit_interval(e.zeta2, "zeta2");
    if (trials < 1) throw std::domain_error("trials must be >= 1");

    const std::size_t n_chunks = default_chunk_count(trials);
    std::vector<std::uint64_t> chunk_errors(n_chunks, 0);
    parallel_chunks(trials, n_chunks,
                    [&](std::size_t chunk, std::size_t begin, std::size_t end) {
        Rng rng(rng_substream(seed, chunk));
        std::uint64_t errors = 0;
        for (std::size_t i = begin; i < end; ++i) {
            const int target = rng.next_below(static_cast<std::uint64_t>(m));
            int selected = m - 1; // reached when no detector fires
            for (int n = 0; n < m - 1; ++n) {
                // Scan POVM: fires surely on the target, with
                // probability zeta1 on a background.
                const bool fired =
                    (n == target) || rng.bernoulli(e.zeta1);
                if (!fired) continue;
                // Confirmation POVM over the rest: never fires on a
                // background, misses the target with probability zeta2.
                selected = n;
                for (int j = n + 1; j < m; ++j) {
                    if (j == target && !rng.bernoulli(e.zeta2)) {
                        selected = j;
                        break;
                    }
                }
                break;
            }
            errors += (selected != target) ? 1 : 0;
        }
        chunk_errors[chunk] = errors;
    });

    std::uint64_t errors = 0;
    for (std::uint64_t c : chunk_errors) errors += c;

    DiscriminationResult r;
    r.kind = ResultKind::monte_carlo;
    r.value = static_cast<double>(errors) / static_cast<double>(trials);
    r.trials = trials;
    r.std_error =
        std::sqrt(r.value * (1.0 - r.value) / static_cast<double>(trials));
    r.seed = seed;
    r.rng_algorithm = rng_algorithm_name;
    return r;
}

} // namespace cpf
