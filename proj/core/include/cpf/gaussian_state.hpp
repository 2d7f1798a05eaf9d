#pragma once

#include <Eigen/Dense>

// Gaussian-state data model and closed-form fidelities.
//
// Conventions (fixed once, everything else follows):
//   quadrature ordering  (q1, p1, q2, p2, ...)
//   x = a + a^dag, so vacuum covariance = identity
//   coherent-state mean = 2 (Re alpha, Im alpha)
// With these, a thermal state has covariance (2N+1) I, a TMSV has diagonal
// blocks (2N_S+1) I and cross block 2 sqrt(N_S(N_S+1)) Z, and the squared
// fidelity of two coherent states is exp(-|alpha-beta|^2).

namespace cpf {

struct GaussianState {
    int n_modes = 0;
    Eigen::VectorXd mean; // length 2 n_modes
    Eigen::MatrixXd cov;  // 2n x 2n, symmetric, vacuum = I
};

struct SymplecticOp {
    Eigen::MatrixXd matrix; // satisfies S Omega S^T = Omega
};

// Standard symplectic form for n modes, blocks [[0,1],[-1,0]].
Eigen::MatrixXd symplectic_form(int n_modes);

// Invariant checks (symmetry, uncertainty relation, mean length).
// Used by tests and by operations that consume externally built states.
bool is_valid_state(const GaussianState& s);
// Throws std::invalid_argument with the violated invariant if not valid.
void require_valid_state(const GaussianState& s);

GaussianState vacuum_state(int n_modes);
GaussianState thermal_state(double n_mean);

// Two-mode squeezed vacuum with N_S mean photons per arm.
GaussianState tmsv_state(double n_s);

GaussianState coherent_state(double alpha_re, double alpha_im);

// [[cosh s I, sinh s Z],[sinh s Z, cosh s I]]. With this sign, the nulling
// strengths used in the reading pipeline (which are negative numbers) map
// loss-channel TMSV outputs to vacuum signal modes; see reading.hpp.
SymplecticOp two_mode_squeezer(double s);

GaussianState apply_symplectic(const SymplecticOp& op, const GaussianState& s);

// Squared Bures fidelity F^2 between one-mode Gaussian states.
// Evaluated as 2 exp(-1/2 du^T (V1+V2)^-1 du) (sqrt(Dw+dw)+sqrt(dw)) / Dw,
// Dw = det(V1+V2), dw = (det V1 - 1)(det V2 - 1), which is the rationalized
// (cancellation-free) equivalent of the textbook 2/(sqrt(Dw+dw)-sqrt(dw)).
double fidelity_one_mode(const GaussianState& a, const GaussianState& b);
// ln F^2; exact for exponents far below double range.
double log_fidelity_one_mode(const GaussianState& a, const GaussianState& b);
// Plain Bures fidelity F = sqrt(F^2).
double bures_fidelity_one_mode(const GaussianState& a, const GaussianState& b);

// Squared Bures fidelity between two-mode Gaussian states via the
// Delta/Gamma/Lambda construction, reduced to all-real arithmetic:
//   Delta = det(V1+V2)/16
//   Gamma = det(Omega V1 Omega V2 - I)/16
//   Lambda = max(det(V1+i Omega),0) max(det(V2+i Omega),0)/16
//   F^2 = exp(-1/2 du^T (V1+V2)^-1 du) (g + sqrt(g^2-Delta)) / Delta,
//   g = sqrt(Gamma) + sqrt(Lambda)
// where det(V+i Omega) = det V - (det A + det B + 2 det C) + 1 for the 2x2
// blocks A, B (diagonal) and C (cross) of V, a real number.
// The reformulation is validated against a complex-arithmetic reference and
// a truncated-Fock Uhlmann oracle in the test suite.
double fidelity_two_mode(const GaussianState& a, const GaussianState& b);
double log_fidelity_two_mode(const GaussianState& a, const GaussianState& b);
double bures_fidelity_two_mode(const GaussianState& a, const GaussianState& b);

// Reads n from a 2x2 covariance block equal to (2n+1) I within tolerance;
// throws std::invalid_argument if the block is not isotropic (the mode is
// then not thermal / phase-insensitive).
double thermal_occupation(const GaussianState& s, int mode_index);

// det(V + i Omega) for a two-mode covariance (real closed form). Zero for
// pure states; also zero whenever any symplectic eigenvalue equals 1.
double det_cov_plus_i_omega(const Eigen::Matrix4d& v);

} // namespace cpf
