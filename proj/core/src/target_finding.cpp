#include "cpf/target_finding.hpp"

#include "cpf/gaussian_state.hpp"
#include "cpf/tolerances.hpp"

#include <gmp.h>
#include <mpfr.h>

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace cpf {

namespace {

// Thin RAII wrapper over mpfr_t with an explicit per-variable precision.
// The C API is used directly (rather than a wrapper library with a
// process-global default precision) so that concurrent evaluations at
// different precisions never share mutable state.
class Real {
public:
    explicit Real(mpfr_prec_t bits) { mpfr_init2(x_, bits); }
    ~Real() { mpfr_clear(x_); }
    Real(const Real&) = delete;
    Real& operator=(const Real&) = delete;

    mpfr_ptr get() { return x_; }
    mpfr_srcptr get() const { return x_; }

private:
    mpfr_t x_;
};

class Int {
public:
    Int() { mpz_init(z_); }
    ~Int() { mpz_clear(z_); }
    Int(const Int&) = delete;
    Int& operator=(const Int&) = delete;

    mpz_ptr get() { return z_; }
    mpz_srcptr get() const { return z_; }

private:
    mpz_t z_;
};

void validate(const TargetFindingParams& p) {
    if (p.m < 2) throw std::domain_error("target finding: m must be >= 2");
    if (!(p.M >= 0.0))
        throw std::domain_error("target finding: M must be >= 0");
    if (!(p.n_s >= 0.0))
        throw std::domain_error("target finding: n_s must be >= 0");
    if (!(p.eta >= 0.0 && p.eta < 1.0))
        throw std::domain_error("target finding: eta must be in [0,1)");
    if (!(p.n_b >= 0.0))
        throw std::domain_error("target finding: n_b must be >= 0");
    if (p.precision_bits < 16)
        throw std::domain_error(
            "target finding: precision_bits must be >= 16");
}

// The bare alternating sum m * dd_error,
//   sum_{k=2}^m (-1)^k C(m,k) exp[-(1-v)(1-v^(k-1)) x / (1-v^k)]
// with v = n_b/(n_b+1), x = eta M n_s, at the given working precision.
void dd_sum(const TargetFindingParams& p, mpfr_prec_t bits, mpfr_ptr sum) {
    const mpfr_rnd_t rnd = MPFR_RNDN;
    Real v(bits), x(bits), vk1(bits), vk(bits), expo(bits), tmp(bits),
        num(bits), term(bits);
    Int binom;

    // v = n_b / (n_b + 1), x = eta * M * n_s
    mpfr_set_d(v.get(), p.n_b, rnd);
    mpfr_add_ui(tmp.get(), v.get(), 1, rnd);
    mpfr_div(v.get(), v.get(), tmp.get(), rnd);
    mpfr_set_d(x.get(), p.eta, rnd);
    mpfr_mul_d(x.get(), x.get(), p.M, rnd);
    mpfr_mul_d(x.get(), x.get(), p.n_s, rnd);

    mpfr_set_zero(sum, 1);
    for (int k = 2; k <= p.m; ++k) {
        mpz_bin_uiui(binom.get(), static_cast<unsigned long>(p.m),
                     static_cast<unsigned long>(k));
        mpfr_pow_ui(vk1.get(), v.get(), static_cast<unsigned long>(k - 1),
                    rnd);
        mpfr_pow_ui(vk.get(), v.get(), static_cast<unsigned long>(k), rnd);
        // expo = -(1-v)(1-v^(k-1)) x / (1-v^k)
        mpfr_ui_sub(expo.get(), 1, v.get(), rnd);
        mpfr_ui_sub(num.get(), 1, vk1.get(), rnd);
        mpfr_mul(expo.get(), expo.get(), num.get(), rnd);
        mpfr_mul(expo.get(), expo.get(), x.get(), rnd);
        mpfr_ui_sub(tmp.get(), 1, vk.get(), rnd);
        mpfr_div(expo.get(), expo.get(), tmp.get(), rnd);
        mpfr_neg(expo.get(), expo.get(), rnd);

        mpfr_exp(term.get(), expo.get(), rnd);
        mpfr_mul_z(term.get(), term.get(), binom.get(), rnd);
        if (k % 2 == 0)
            mpfr_add(sum, sum, term.get(), rnd);
        else
            mpfr_sub(sum, sum, term.get(), rnd);
    }
}

// Evaluates at the requested precision together with a doubled-precision
// self-check; throws if they disagree (cancellation ate the digits).
// On success `value` holds the checked sum / m at 2 x precision.
void dd_checked_value(const TargetFindingParams& p, mpfr_ptr value) {
    const mpfr_prec_t bits = p.precision_bits;
    Real fine(2 * bits), coarse(bits), diff(2 * bits), scale(2 * bits);
    dd_sum(p, 2 * bits, fine.get());
    dd_sum(p, bits, coarse.get());

    mpfr_sub(diff.get(), coarse.get(), fine.get(), MPFR_RNDN);
    mpfr_abs(diff.get(), diff.get(), MPFR_RNDN);
    mpfr_abs(scale.get(), fine.get(), MPFR_RNDN);
    if (mpfr_cmp_d(scale.get(), 1e-300) < 0)
        mpfr_set_d(scale.get(), 1e-300, MPFR_RNDN);
    mpfr_div(diff.get(), diff.get(), scale.get(), MPFR_RNDN);
    if (mpfr_cmp_d(diff.get(), tol::dd_self_check_rel) > 0)
        throw std::runtime_error(
            "dd_error: alternating sum lost too many digits at " +
            std::to_string(p.precision_bits) +
            " bits; raise precision_bits (try " +
            std::to_string(4 * p.precision_bits) +
            " or set CPF_PRECISION_BITS)");
    mpfr_div_ui(value, fine.get(), static_cast<unsigned long>(p.m),
                MPFR_RNDN);
}

} // namespace

int default_precision_bits() {
    static const int cached = [] {
        const char* env = std::getenv("CPF_PRECISION_BITS");
        if (env == nullptr) return 256;
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || v < 16 || v > 1048576) return 256;
        return static_cast<int>(v);
    }();
    return cached;
}

double ctf_lb(const TargetFindingParams& p) {
    validate(p);
    return (p.m - 1.0) / (2.0 * p.m) * std::exp(-2.0 * p.M * p.eta * p.n_s /
                                                (2.0 * p.n_b + 1.0));
}

double log_ctf_lb(const TargetFindingParams& p) {
    validate(p);
    return std::log((p.m - 1.0) / (2.0 * p.m)) -
           2.0 * p.M * p.eta * p.n_s / (2.0 * p.n_b + 1.0);
}

double dd_error(const TargetFindingParams& p) {
    validate(p);
    Real value(2 * static_cast<mpfr_prec_t>(p.precision_bits));
    dd_checked_value(p, value.get());
    const double out = mpfr_get_d(value.get(), MPFR_RNDN);
    const double ceiling = (p.m - 1.0) / p.m;
    if (out < -1e-12 || out > ceiling * (1.0 + 1e-12))
        throw std::runtime_error(
            "dd_error: result escaped [0, (m-1)/m]; raise precision_bits");
    return std::min(std::max(out, 0.0), ceiling);
}

double log_dd_error(const TargetFindingParams& p) {
    validate(p);
    Real value(2 * static_cast<mpfr_prec_t>(p.precision_bits));
    dd_checked_value(p, value.get());
    if (mpfr_sgn(value.get()) <= 0)
        throw std::runtime_error(
            "dd_error: nonpositive sum; raise precision_bits");
    mpfr_log(value.get(), value.get(), MPFR_RNDN);
    return mpfr_get_d(value.get(), MPFR_RNDN);
}

namespace {

// Covariances of the returned signal/retained idler pair as stated by
// the scenario: the background sector replaces the probe with thermal
// noise of occupation n_b; the target sector additionally carries the
// sqrt(eta)-scaled TMSV correlations (its eta n_s contribution to the
// return noise is dropped by the no-passive-signature construction).
GaussianState qtf_return_state(const TargetFindingParams& p, bool target) {
    GaussianState s = vacuum_state(2);
    s.cov(0, 0) = s.cov(1, 1) = 2.0 * p.n_b + 1.0;
    s.cov(2, 2) = s.cov(3, 3) = 2.0 * p.n_s + 1.0;
    if (target) {
        const double c =
            2.0 * std::sqrt(p.eta * p.n_s * (p.n_s + 1.0));
        s.cov(0, 2) = s.cov(2, 0) = c;
        s.cov(1, 3) = s.cov(3, 1) = -c;
    }
    return s;
}

double log_qtf_pair_fidelity(const TargetFindingParams& p) {
    return log_fidelity_two_mode(qtf_return_state(p, true),
                                 qtf_return_state(p, false));
}

} // namespace

DiscriminationResult qtf_ub(const TargetFindingParams& p) {
    validate(p);
    return clamp_upper_bound(
        std::exp(std::log(p.m - 1.0) + p.M * log_qtf_pair_fidelity(p)));
}

double log_qtf_ub(const TargetFindingParams& p) {
    validate(p);
    return std::min(0.0, std::log(p.m - 1.0) + p.M * log_qtf_pair_fidelity(p));
}

double qtf_ub_asymptotic(const TargetFindingParams& p) {
    validate(p);
    return (p.m - 1.0) *
           std::exp(-p.M * p.eta * p.n_s / (1.0 + p.n_b));
}

double log_qtf_ub_asymptotic(const TargetFindingParams& p) {
    validate(p);
    return std::log(p.m - 1.0) - p.M * p.eta * p.n_s / (1.0 + p.n_b);
}

ErrorPair sfg_error_pair(const TargetFindingParams& p) {
    const LogErrorPair lp = log_sfg_error_pair(p);
    return {std::exp(lp.log_zeta1), std::exp(lp.log_zeta2)};
}

LogErrorPair log_sfg_error_pair(const TargetFindingParams& p) {
    validate(p);
    if (!(p.n_b > 0.0))
        throw std::domain_error(
            "the SFG receiver statistics require n_b > 0");
    const double log_zeta =
        -p.M * p.eta * p.n_s * (p.n_s + 1.0) / p.n_b;
    return {log_zeta, log_zeta};
}

double sfg_nulling_angle(const TargetFindingParams& p) {
    validate(p);
    return -0.5 * std::atan(-2.0 *
                            std::sqrt(p.eta * p.n_s * (p.n_s + 1.0)) /
                            (1.0 + p.n_s + p.n_b));
}

double qtf_cn_error(const TargetFindingParams& p) {
    return cn_error(p.m, sfg_error_pair(p));
}

double log_qtf_cn_error(const TargetFindingParams& p) {
    return log_cn_error(p.m, log_sfg_error_pair(p));
}

double qtf_cn_asymptotic(const TargetFindingParams& p) {
    validate(p);
    if (!(p.n_b > 0.0))
        throw std::domain_error(
            "the SFG receiver statistics require n_b > 0");
    return 0.5 * (p.m - 1.0) *
           std::exp(-2.0 * p.M * p.eta * p.n_s / p.n_b);
}

double log_qtf_cn_asymptotic(const TargetFindingParams& p) {
    validate(p);
    if (!(p.n_b > 0.0))
        throw std::domain_error(
            "the SFG receiver statistics require n_b > 0");
    return std::log(0.5 * (p.m - 1.0)) - 2.0 * p.M * p.eta * p.n_s / p.n_b;
}

} // namespace cpf
