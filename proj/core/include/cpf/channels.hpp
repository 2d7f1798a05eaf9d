#pragma once

#include "gaussian_state.hpp"

#include <utility>

// Single-mode phase-insensitive bosonic channels and the channel-position
// scenarios built from them.
//
// Every channel here acts on (mean, cov) of one mode as
//   mean -> sqrt(mu) mean        (conjugated: complex-conjugated amplitude)
//   cov  -> mu cov + (2E + 1 - mu) I
// with transmissivity/gain mu and induced noise E:
//   thermal loss  L_kappa^N : mu = kappa in [0,1], E = (1-mu) N
//   noisy amplifier A_g^N   : mu = g >= 1,         E = (mu-1)(N+1)
//   additive noise Xi_w     : mu = 1,              E = w/2
//   conjugate amplifier     : mu > 0,              E >= mu
// The conjugate amplifier transposes the mode, so it is not a Gaussian CP
// map on (mean, cov); apply_to_gaussian rejects it and only its action on
// coherent-state parameters is exposed.

namespace cpf {

enum class ChannelKind {
    thermal_loss,
    noisy_amplifier,
    additive_noise,
    conjugate_amplifier,
};

// Canonical storage is (kind, mu, E); N and the additive-noise strength
// are derived accessors, since (mu, E) is the pair every benchmark
// formula downstream consumes.
struct PhaseInsensitiveChannel {
    ChannelKind kind = ChannelKind::thermal_loss;
    double mu = 1.0; // transmissivity (<=1) or gain (>=1)
    double E = 0.0;  // induced noise, output cov = mu V + (2E+1-mu) I

    // Environment mean photon number consistent with (kind, mu, E).
    // thermal_loss: E/(1-mu); noisy_amplifier: E/(mu-1) - 1;
    // conjugate_amplifier: (E-mu)/(mu+1). Throws for the degenerate
    // mu = 1 loss/amplifier case with E > 0.
    double environment_occupation() const;
    // omega = 2E, the additive-noise strength (meaningful for mu == 1).
    double additive_noise_strength() const;
};

// Factories; each validates parameter ranges and throws
// std::invalid_argument on violation.
PhaseInsensitiveChannel thermal_loss(double kappa, double n_env);
PhaseInsensitiveChannel noisy_amplifier(double gain, double n_env);
PhaseInsensitiveChannel additive_noise(double omega);
PhaseInsensitiveChannel conjugate_amplifier(double gain, double E);

// Apply channel to one mode of a Gaussian state. Cross covariance blocks
// with untouched modes scale by sqrt(mu). Throws std::invalid_argument
// for conjugate_amplifier and std::out_of_range for a bad mode index.
GaussianState apply_to_gaussian(const PhaseInsensitiveChannel& ch,
                                const GaussianState& s, int mode_index);

// Output of a coherent state |alpha>: displaced thermal state with
// amplitude sqrt(mu) alpha (sqrt(mu) conj(alpha) for the conjugate kind)
// and covariance (2E+1) I.
struct CoherentOutput {
    double alpha_re = 0.0;
    double alpha_im = 0.0;
    double cov_diag = 1.0;
};
CoherentOutput coherent_output(const PhaseInsensitiveChannel& ch,
                               double alpha_re, double alpha_im);

// One instance of the channel-position-finding problem: m subsystems with
// uniform priors, M probed modes each at N_S mean photons per mode, one
// subsystem carrying `target` and the rest `background`. Total irradiated
// energy is m * M * N_S.
struct CPFScenario {
    int m = 2;
    double M = 1.0;
    double n_s = 0.0;
    PhaseInsensitiveChannel target;
    PhaseInsensitiveChannel background;
};

// Reading geometry: memory cell l has reflectivity r_l and environment
// occupation N_B/(1-r_l), so both channels induce E_l = N_B (no passive
// signature). N_B = 0 recovers the pure-loss setting. r_l = 1 with
// N_B > 0 is rejected (environment occupation undefined there; the ideal
// background case in use has N_B = 0).
std::pair<PhaseInsensitiveChannel, PhaseInsensitiveChannel>
reading_channels(double r_b, double r_t, double n_b); // (target, background)

// Target finding geometry: target = thermal_loss(eta, n_b/(1-eta)),
// background = thermal_loss(0, n_b), again with no passive signature
// (E = n_b on both). eta = 1 with n_b > 0 is rejected.
std::pair<PhaseInsensitiveChannel, PhaseInsensitiveChannel>
target_finding_channels(double eta, double n_b); // (target, background)

} // namespace cpf
