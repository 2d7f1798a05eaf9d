#include "cpf/fock_oracle.hpp"

#include "cpf/parallel.hpp"
#include "cpf/rng.hpp"
#include "cpf/tolerances.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace cpf {

namespace {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXd;
using cplx = std::complex<double>;

void require_mode(const FockState& s, int mode) {
    if (mode < 0 || mode >= s.n_modes)
        throw std::out_of_range("fock mode index out of range");
}

// Kron with identities so that `op` acts on `mode` of an n_modes space,
// ordering |n_0, n_1, ...> = |n_0> kron |n_1> kron ...
MatrixXcd embed(const MatrixXcd& op, int mode, int n_modes, int d) {
    MatrixXcd full = op;
    for (int i = 0; i < mode; ++i) {
        MatrixXcd grown = MatrixXcd::Zero(d * full.rows(), d * full.cols());
        for (int k = 0; k < d; ++k)
            grown.block(k * full.rows(), k * full.cols(), full.rows(),
                        full.cols()) = full;
        full = std::move(grown);
    }
    for (int i = mode + 1; i < n_modes; ++i) {
        MatrixXcd grown = MatrixXcd::Zero(d * full.rows(), d * full.cols());
        for (int r = 0; r < full.rows(); ++r)
            for (int c = 0; c < full.cols(); ++c)
                if (full(r, c) != cplx(0.0, 0.0))
                    for (int k = 0; k < d; ++k)
                        grown(r * d + k, c * d + k) = full(r, c);
        full = std::move(grown);
    }
    return full;
}

// exp(G) for anti-Hermitian G, via the Hermitian eigendecomposition of
// iG: exp(G) = V exp(-i lambda) V^dag. Exactly unitary on the truncation.
MatrixXcd exp_antihermitian(const MatrixXcd& g) {
    const MatrixXcd h = cplx(0.0, 1.0) * g;
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(h);
    const auto& lambda = es.eigenvalues();
    MatrixXcd phases = MatrixXcd::Zero(g.rows(), g.cols());
    for (int i = 0; i < lambda.size(); ++i)
        phases(i, i) = std::exp(cplx(0.0, -lambda(i)));
    return es.eigenvectors() * phases * es.eigenvectors().adjoint();
}

} // namespace

void require_valid_fock(const FockState& s, double leakage_max) {
    if (s.rho.rows() != s.dim() || s.rho.cols() != s.dim())
        throw std::runtime_error("fock state dimension mismatch");
    const double herm_defect =
        (s.rho - s.rho.adjoint()).cwiseAbs().maxCoeff();
    if (herm_defect > tol::fock_hermiticity)
        throw std::runtime_error(
            "fock state is not Hermitian within tolerance");
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(s.rho, Eigen::EigenvaluesOnly);
    if (es.eigenvalues()(0) < tol::fock_eigen_floor)
        throw std::runtime_error(
            "fock state has a negative eigenvalue beyond tolerance");
    if (s.leakage > leakage_max)
        throw std::runtime_error(
            "fock state truncation leakage " + std::to_string(s.leakage) +
            " exceeds " + std::to_string(leakage_max) +
            "; increase the cutoff");
}

int suggested_cutoff(double total_mean_photons) {
    return static_cast<int>(std::ceil(10.0 * (1.0 + total_mean_photons)));
}

FockState vacuum_fock(int n_modes, int cutoff) {
    if (n_modes < 1 || n_modes > 2)
        throw std::invalid_argument("supported mode counts: 1 or 2");
    if (cutoff < 0) throw std::invalid_argument("cutoff must be >= 0");
    FockState s;
    s.n_modes = n_modes;
    s.cutoff = cutoff;
    s.rho = MatrixXcd::Zero(s.dim(), s.dim());
    s.rho(0, 0) = 1.0;
    return s;
}

FockState thermal_fock(double n_mean, int cutoff) {
    if (n_mean < 0.0) throw std::invalid_argument("n_mean must be >= 0");
    FockState s = vacuum_fock(1, cutoff);
    double mass = 0.0;
    for (int k = 0; k <= cutoff; ++k) {
        s.rho(k, k) = n_mean == 0.0
                          ? (k == 0 ? 1.0 : 0.0)
                          : std::exp(k * std::log(n_mean / (n_mean + 1.0)) -
                                     std::log(n_mean + 1.0));
        mass += s.rho(k, k).real();
    }
    s.leakage = 1.0 - mass;
    return s;
}

FockState tmsv_fock(double n_s, int cutoff) {
    if (n_s < 0.0) throw std::invalid_argument("n_s must be >= 0");
    FockState s = vacuum_fock(2, cutoff);
    const int d = s.mode_dim();
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(s.dim());
    double norm2 = 0.0;
    for (int k = 0; k <= cutoff; ++k) {
        const double ck =
            n_s == 0.0 ? (k == 0 ? 1.0 : 0.0)
                       : std::exp(0.5 * (k * std::log(n_s / (n_s + 1.0)) -
                                         std::log(n_s + 1.0)));
        psi(k * d + k) = ck;
        norm2 += ck * ck;
    }
    const double leakage = 1.0 - norm2;
    if (leakage > tol::fock_leakage_max) {
        const int needed = static_cast<int>(std::ceil(
            std::log(0.1 * tol::fock_leakage_max) /
            std::log(n_s / (n_s + 1.0))));
        throw std::runtime_error(
            "tmsv_fock: leakage " + std::to_string(leakage) +
            " too large at cutoff " + std::to_string(cutoff) +
            "; use a cutoff of at least " + std::to_string(needed));
    }
    s.rho = psi * psi.adjoint();
    s.leakage = leakage;
    return s;
}

Eigen::MatrixXcd annihilation_operator(int dim) {
    MatrixXcd a = MatrixXcd::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(double(n));
    return a;
}

Eigen::MatrixXcd displacement_operator(std::complex<double> alpha, int dim) {
    // Exact elements <m|D(alpha)|n>:
    //   m >= n: sqrt(n!/m!) alpha^(m-n) e^(-|a|^2/2) L_n^(m-n)(|a|^2)
    //   m <  n: same with (m <-> n) and alpha -> -conj(alpha).
    MatrixXcd d = MatrixXcd::Zero(dim, dim);
    const double x = std::norm(alpha);
    const double gauss = std::exp(-0.5 * x);
    for (int a = 0; a < dim; ++a) { // a = |row - col| diagonal offset
        // Laguerre recurrence in n at fixed order a, with the
        // sqrt(n!/(n+a)!) |alpha|^a scale carried multiplicatively.
        double l_prev = 0.0;
        double l_cur = 1.0; // L_0^a = 1
        double scale = std::exp(0.5 * (a * std::log(x == 0.0 ? 1.0 : x) -
                                       std::lgamma(a + 1.0)));
        if (x == 0.0 && a > 0) scale = 0.0;
        const cplx phase_up =
            x == 0.0 ? cplx(1.0, 0.0)
                     : std::pow(alpha / std::abs(alpha), a);
        const cplx phase_dn =
            x == 0.0 ? cplx(1.0, 0.0)
                     : std::pow(-std::conj(alpha) / std::abs(alpha), a);
        for (int n = 0; n + a < dim; ++n) {
            if (n > 0) {
                const double l_next =
                    ((2.0 * (n - 1) + 1.0 + a - x) * l_cur -
                     (n - 1.0 + a) * l_prev) /
                    n;
                l_prev = l_cur;
                l_cur = l_next;
                scale *= std::sqrt(double(n) / (n + a));
            }
            const double real_part = gauss * scale * l_cur;
            d(n + a, n) = phase_up * real_part;
            if (a > 0) d(n, n + a) = phase_dn * real_part;
        }
    }
    return d;
}

Eigen::MatrixXcd squeeze_operator(double r, int dim) {
    // exp(r (adag^2 - a^2)/2): q -> e^r q, p -> e^-r p on the quadratures
    // used by gaussian_state (cov diag(e^{2r}, e^{-2r}) from vacuum).
    const MatrixXcd a = annihilation_operator(dim);
    const MatrixXcd adag = a.adjoint();
    const MatrixXcd g = 0.5 * r * (adag * adag - a * a);
    return exp_antihermitian(g);
}

Eigen::MatrixXcd phase_operator(double theta, int dim) {
    MatrixXcd u = MatrixXcd::Zero(dim, dim);
    for (int n = 0; n < dim; ++n) u(n, n) = std::exp(cplx(0.0, -n * theta));
    return u;
}

Eigen::MatrixXcd beamsplitter_operator(double theta, int dim) {
    const MatrixXcd a = embed(annihilation_operator(dim), 0, 2, dim);
    const MatrixXcd b = embed(annihilation_operator(dim), 1, 2, dim);
    const MatrixXcd g = theta * (a.adjoint() * b - a * b.adjoint());
    return exp_antihermitian(g);
}

FockState apply_unitary(const FockState& s, const Eigen::MatrixXcd& u) {
    if (u.rows() != s.dim() || u.cols() != s.dim())
        throw std::invalid_argument("unitary dimension mismatch");
    FockState out = s;
    out.rho = u * s.rho * u.adjoint();
    // Non-unitary truncation effects (e.g. exact displacement elements)
    // show up as lost trace; account for it.
    out.leakage = s.leakage + std::max(0.0, s.rho.trace().real() -
                                                out.rho.trace().real());
    return out;
}

FockState apply_mode_unitary(const FockState& s, const Eigen::MatrixXcd& u,
                             int mode) {
    require_mode(s, mode);
    if (u.rows() != s.mode_dim() || u.cols() != s.mode_dim())
        throw std::invalid_argument("mode unitary dimension mismatch");
    return apply_unitary(s, embed(u, mode, s.n_modes, s.mode_dim()));
}

FockState loss_channel_fock(const FockState& s, double r, int mode) {
    require_mode(s, mode);
    if (r < 0.0 || r > 1.0)
        throw std::invalid_argument("transmissivity must be in [0,1]");
    const int d = s.mode_dim();

    FockState out = s;
    out.rho.setZero();
    // <n-k| A_k |n> = sqrt(C(n,k) r^(n-k) (1-r)^k)
    for (int k = 0; k < d; ++k) {
        MatrixXcd ak = MatrixXcd::Zero(d, d);
        for (int n = k; n < d; ++n) {
            const double log_c = std::lgamma(n + 1.0) -
                                 std::lgamma(k + 1.0) -
                                 std::lgamma(n - k + 1.0);
            double log_amp2 = log_c + k * std::log1p(-r);
            if (n > k) {
                if (r == 0.0) continue;
                log_amp2 += (n - k) * std::log(r);
            }
            if (k > 0 && r == 1.0) continue;
            ak(n - k, n) = std::exp(0.5 * log_amp2);
        }
        const MatrixXcd full = embed(ak, mode, s.n_modes, d);
        out.rho += full * s.rho * full.adjoint();
    }
    out.leakage = s.leakage + std::max(0.0, s.rho.trace().real() -
                                                out.rho.trace().real());
    return out;
}

double uhlmann_fidelity(const FockState& a, const FockState& b) {
    if (a.dim() != b.dim() || a.n_modes != b.n_modes)
        throw std::invalid_argument("uhlmann_fidelity: dimension mismatch");
    require_valid_fock(a, tol::fock_leakage_max);
    require_valid_fock(b, tol::fock_leakage_max);

    Eigen::SelfAdjointEigenSolver<MatrixXcd> ea(a.rho);
    VectorXd lam = ea.eigenvalues().cwiseMax(0.0);
    const MatrixXcd sqrt_a = ea.eigenvectors() *
                             lam.cwiseSqrt().asDiagonal() *
                             ea.eigenvectors().adjoint();
    const MatrixXcd inner = sqrt_a * b.rho * sqrt_a;
    Eigen::SelfAdjointEigenSolver<MatrixXcd> ei(inner, Eigen::EigenvaluesOnly);
    double f = 0.0;
    for (int i = 0; i < ei.eigenvalues().size(); ++i)
        f += std::sqrt(std::max(ei.eigenvalues()(i), 0.0));
    return f * f;
}

GaussianState moments_from_fock(const FockState& s) {
    const int d = s.mode_dim();
    std::vector<MatrixXcd> quads; // q_0, p_0, q_1, p_1, ...
    for (int mode = 0; mode < s.n_modes; ++mode) {
        const MatrixXcd a = embed(annihilation_operator(d), mode, s.n_modes, d);
        quads.push_back(a + a.adjoint());
        quads.push_back(cplx(0.0, -1.0) * (a - a.adjoint()));
    }
    const int n = static_cast<int>(quads.size());
    GaussianState g;
    g.n_modes = s.n_modes;
    g.mean = VectorXd::Zero(n);
    g.cov = MatrixXd::Zero(n, n);
    // Normalize by the trace so truncation leakage does not bias moments.
    const double tr = s.rho.trace().real();
    for (int i = 0; i < n; ++i)
        g.mean(i) = (s.rho * quads[i]).trace().real() / tr;
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            const double sym =
                (s.rho * quads[i] * quads[j]).trace().real() / tr;
            g.cov(i, j) = g.cov(j, i) = sym - g.mean(i) * g.mean(j);
        }
    }
    return g;
}

double CountSamples::all_zero_fraction() const {
    if (trials == 0) return 0.0;
    std::uint64_t zero_rows = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        bool all_zero = true;
        for (int m = 0; m < modes && all_zero; ++m)
            all_zero = at(t, m) == 0;
        zero_rows += all_zero ? 1 : 0;
    }
    return static_cast<double>(zero_rows) / static_cast<double>(trials);
}

double CountSamples::mean_count() const {
    if (counts.empty()) return 0.0;
    double sum = 0.0;
    for (std::uint32_t c : counts) sum += c;
    return sum / static_cast<double>(counts.size());
}

namespace {

template <typename PerMode>
CountSamples sample_counts(int modes, std::uint64_t trials,
                           std::uint64_t seed, PerMode per_mode) {
    if (modes < 1) throw std::invalid_argument("modes must be >= 1");
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    CountSamples out;
    out.trials = trials;
    out.modes = modes;
    out.counts.resize(trials * static_cast<std::uint64_t>(modes));
    const std::size_t n_chunks = default_chunk_count(trials);
    parallel_chunks(trials, n_chunks,
                    [&](std::size_t chunk, std::size_t begin, std::size_t end) {
        Rng rng(rng_substream(seed, chunk));
        for (std::size_t t = begin; t < end; ++t)
            for (int m = 0; m < modes; ++m)
                out.counts[t * static_cast<std::uint64_t>(modes) + m] =
                    per_mode(rng);
    });
    return out;
}

} // namespace

CountSamples sample_thermal_counts(double n_mean, int modes,
                                   std::uint64_t trials, std::uint64_t seed) {
    if (n_mean < 0.0) throw std::invalid_argument("n_mean must be >= 0");
    return sample_counts(modes, trials, seed, [n_mean](Rng& rng) {
        return rng.next_thermal_count(n_mean);
    });
}

CountSamples sample_displaced_thermal_counts(double mean_photons_signal,
                                             double n_thermal, int modes,
                                             std::uint64_t trials,
                                             std::uint64_t seed) {
    if (mean_photons_signal < 0.0 || n_thermal < 0.0)
        throw std::invalid_argument("parameters must be >= 0");
    const double amp = std::sqrt(mean_photons_signal);
    const double sigma = std::sqrt(0.5 * n_thermal);
    return sample_counts(modes, trials, seed, [amp, sigma](Rng& rng) {
        const double re = amp + sigma * rng.next_normal();
        const double im = sigma * rng.next_normal();
        return rng.next_poisson(re * re + im * im);
    });
}

} // namespace cpf
