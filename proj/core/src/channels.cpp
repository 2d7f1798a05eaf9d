#include "cpf/channels.hpp"

#include <cmath>
#include <stdexcept>

namespace cpf {

double PhaseInsensitiveChannel::environment_occupation() const {
    switch (kind) {
    case ChannelKind::thermal_loss:
        if (mu == 1.0) {
            if (E == 0.0) return 0.0;
            throw std::domain_error(
                "environment occupation undefined for unit transmissivity "
                "with nonzero noise");
        }
        return E / (1.0 - mu);
    case ChannelKind::noisy_amplifier:
        if (mu == 1.0) {
            if (E == 0.0) return 0.0;
            throw std::domain_error(
                "environment occupation undefined for unit gain with "
                "nonzero noise");
        }
        return E / (mu - 1.0) - 1.0;
    case ChannelKind::additive_noise:
        throw std::domain_error(
            "additive noise has no finite environment occupation");
    case ChannelKind::conjugate_amplifier:
        return (E - mu) / (mu + 1.0);
    }
    throw std::logic_error("unknown channel kind");
}

double PhaseInsensitiveChannel::additive_noise_strength() const {
    return 2.0 * E;
}

PhaseInsensitiveChannel thermal_loss(double kappa, double n_env) {
    if (kappa < 0.0 || kappa > 1.0)
        throw std::invalid_argument("thermal_loss: kappa must be in [0,1]");
    if (n_env < 0.0)
        throw std::invalid_argument("thermal_loss: n_env must be >= 0");
    return {ChannelKind::thermal_loss, kappa, (1.0 - kappa) * n_env};
}

PhaseInsensitiveChannel noisy_amplifier(double gain, double n_env) {
    if (gain < 1.0)
        throw std::invalid_argument("noisy_amplifier: gain must be >= 1");
    if (n_env < 0.0)
        throw std::invalid_argument("noisy_amplifier: n_env must be >= 0");
    return {ChannelKind::noisy_amplifier, gain, (gain - 1.0) * (n_env + 1.0)};
}

PhaseInsensitiveChannel additive_noise(double omega) {
    if (omega < 0.0)
        throw std::invalid_argument("additive_noise: omega must be >= 0");
    return {ChannelKind::additive_noise, 1.0, 0.5 * omega};
}

PhaseInsensitiveChannel conjugate_amplifier(double gain, double E) {
    if (gain <= 0.0)
        throw std::invalid_argument("conjugate_amplifier: gain must be > 0");
    if (E < gain)
        throw std::invalid_argument(
            "conjugate_amplifier: E must be >= gain (environment occupation "
            "would be negative)");
    return {ChannelKind::conjugate_amplifier, gain, E};
}

GaussianState apply_to_gaussian(const PhaseInsensitiveChannel& ch,
                                const GaussianState& s, int mode_index) {
    if (ch.kind == ChannelKind::conjugate_amplifier)
        throw std::invalid_argument(
            "conjugate amplifier is not a Gaussian map on (mean, cov); use "
            "coherent_output");
    if (mode_index < 0 || mode_index >= s.n_modes)
        throw std::out_of_range("mode_index out of range");
    const double root_mu = std::sqrt(ch.mu);
    const int r = 2 * mode_index;
    GaussianState out = s;
    out.mean.segment<2>(r) *= root_mu;
    // Scale the full row/column pair, then fix the diagonal block, which
    // has picked up mu exactly once through the two scalings.
    out.cov.middleRows<2>(r) *= root_mu;
    out.cov.middleCols<2>(r) *= root_mu;
    out.cov.block<2, 2>(r, r) +=
        (2.0 * ch.E + 1.0 - ch.mu) * Eigen::Matrix2d::Identity();
    return out;
}

CoherentOutput coherent_output(const PhaseInsensitiveChannel& ch,
                               double alpha_re, double alpha_im) {
    const double root_mu = std::sqrt(ch.mu);
    CoherentOutput out;
    out.alpha_re = root_mu * alpha_re;
    out.alpha_im = (ch.kind == ChannelKind::conjugate_amplifier ? -1.0 : 1.0) *
                   root_mu * alpha_im;
    out.cov_diag = 2.0 * ch.E + 1.0;
    return out;
}

std::pair<PhaseInsensitiveChannel, PhaseInsensitiveChannel>
reading_channels(double r_b, double r_t, double n_b) {
    for (double r : {r_b, r_t}) {
        if (r < 0.0 || r > 1.0)
            throw std::invalid_argument(
                "reading_channels: reflectivities must be in [0,1]");
        if (r == 1.0 && n_b > 0.0)
            throw std::invalid_argument(
                "reading_channels: unit reflectivity with thermal noise has "
                "no defining environment occupation");
    }
    if (n_b < 0.0)
        throw std::invalid_argument("reading_channels: n_b must be >= 0");
    // Environment occupation n_b/(1-r) per cell, so the induced noise is
    // exactly n_b on both (no passive signature).
    PhaseInsensitiveChannel target{ChannelKind::thermal_loss, r_t, n_b};
    PhaseInsensitiveChannel background{ChannelKind::thermal_loss, r_b, n_b};
    return {target, background};
}

std::pair<PhaseInsensitiveChannel, PhaseInsensitiveChannel>
target_finding_channels(double eta, double n_b) {
    if (eta < 0.0 || eta > 1.0)
        throw std::invalid_argument(
            "target_finding_channels: eta must be in [0,1]");
    if (n_b < 0.0)
        throw std::invalid_argument("target_finding_channels: n_b must be >= 0");
    if (eta == 1.0 && n_b > 0.0)
        throw std::invalid_argument(
            "target_finding_channels: eta = 1 with thermal noise has no "
            "defining environment occupation");
    PhaseInsensitiveChannel target{ChannelKind::thermal_loss, eta, n_b};
    PhaseInsensitiveChannel background{ChannelKind::thermal_loss, 0.0, n_b};
    return {target, background};
}

} // namespace cpf
