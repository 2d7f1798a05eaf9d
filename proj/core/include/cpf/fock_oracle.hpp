#pragma once

#include "gaussian_state.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <vector>

// Brute-force verification backend in truncated Fock space: states as
// dense density matrices, exact Kraus evolution through loss, Uhlmann
// fidelity via Hermitian eigendecompositions, and photon-count samplers.
// Everything here is deliberately independent of the Gaussian closed
// forms it checks: states are built from Schmidt coefficients and
// operator exponentials, and (mean, cov) are extracted from moments.

namespace cpf {

struct FockState {
    int n_modes = 1;
    int cutoff = 0;          // per-mode truncation N_max
    Eigen::MatrixXcd rho;    // dimension (cutoff+1)^n_modes
    double leakage = 0.0;    // 1 - trace lost to truncation so far

    int mode_dim() const { return cutoff + 1; }
    int dim() const {
        int d = 1;
        for (int i = 0; i < n_modes; ++i) d *= mode_dim();
        return d;
    }
};

// Hermiticity within 1e-12, eigenvalues >= -1e-10, and leakage below
// `leakage_max` (oracle comparisons use 1e-8). Throws std::runtime_error
// naming the violated invariant.
void require_valid_fock(const FockState& s, double leakage_max);

// ceil(10 (1 + total mean photons)): default truncation heuristic;
// always verify leakage afterwards.
int suggested_cutoff(double total_mean_photons);

FockState vacuum_fock(int n_modes, int cutoff);
FockState thermal_fock(double n_mean, int cutoff);
// Pure two-mode squeezed vacuum from its Schmidt coefficients
// sqrt(n_s^k / (n_s+1)^(k+1)). Throws std::runtime_error with a
// suggested cutoff if the truncated norm misses 1 by more than 1e-8.
FockState tmsv_fock(double n_s, int cutoff);

// One-mode operators on the truncated basis (dim = cutoff + 1).
Eigen::MatrixXcd annihilation_operator(int dim);
// Exact matrix elements of exp(alpha a^dag - conj(alpha) a) via the
// associated-Laguerre recurrence (not an exponential of the truncated
// generator, so columns near the cutoff lose norm; that loss lands in
// leakage where it belongs).
Eigen::MatrixXcd displacement_operator(std::complex<double> alpha, int dim);
// exp(r (a^dag^2 - a^2) / 2), i.e. q -> e^r q, by eigendecomposition of
// the (Hermitian) i-times-generator; exactly unitary on the truncated
// space.
Eigen::MatrixXcd squeeze_operator(double r, int dim);
Eigen::MatrixXcd phase_operator(double theta, int dim); // diag e^{-i n theta}
// Two-mode mixer exp(theta (a^dag b - a b^dag)) on dim^2, ordering
// |n_a, n_b> = |n_a> kron |n_b>.
Eigen::MatrixXcd beamsplitter_operator(double theta, int dim);

// Apply a unitary on the full space / on one mode (kron with identity).
FockState apply_unitary(const FockState& s, const Eigen::MatrixXcd& u);
FockState apply_mode_unitary(const FockState& s, const Eigen::MatrixXcd& u,
                             int mode);

// Pure-loss channel of transmissivity r on one mode: sum_k A_k rho A_k^dag
// with <n-k| A_k |n> = sqrt(C(n,k) r^(n-k) (1-r)^k). Trace-preserving on
// the truncated space within 1e-12.
FockState loss_channel_fock(const FockState& s, double r, int mode);

// Squared Uhlmann fidelity F^2 = (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2
// via dense Hermitian square roots. The oracle for the Gaussian fidelity
// closed forms.
double uhlmann_fidelity(const FockState& a, const FockState& b);

// First and second moments of x = (q1, p1, ...), q = a + a^dag,
// p = -i(a - a^dag), packaged as a GaussianState (exact for the Gaussian
// states built here, up to truncation).
GaussianState moments_from_fock(const FockState& s);

// Photon-count samples, row-major trials x modes.
struct CountSamples {
    std::uint64_t trials = 0;
    int modes = 0;
    std::vector<std::uint32_t> counts;

    std::uint32_t at(std::uint64_t trial, int mode) const {
        return counts[trial * static_cast<std::uint64_t>(modes) + mode];
    }
    double all_zero_fraction() const;
    double mean_count() const;
};

// i.i.d. geometric counts, P(n) = n_mean^n / (n_mean+1)^(n+1), per mode.
CountSamples sample_thermal_counts(double n_mean, int modes,
                                   std::uint64_t trials, std::uint64_t seed);

// Counts of a displaced thermal state, P-function sampling: amplitude
// drawn Gaussian around sqrt(mean_photons_signal) with variance
// n_thermal/2 per quadrature, then Poisson(|amplitude|^2).
CountSamples sample_displaced_thermal_counts(double mean_photons_signal,
                                             double n_thermal, int modes,
                                             std::uint64_t trials,
                                             std::uint64_t seed);

} // namespace cpf
