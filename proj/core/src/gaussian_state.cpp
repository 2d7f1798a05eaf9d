#include "cpf/gaussian_state.hpp"

#include "cpf/tolerances.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>
#include <string>

namespace cpf {

namespace {

// Hermitian eigencheck of V + i Omega; the smallest eigenvalue must not
// dip below tol::uncertainty_eigen.
double min_uncertainty_eigenvalue(const GaussianState& s) {
    Eigen::MatrixXcd h = s.cov.cast<std::complex<double>>();
    const Eigen::MatrixXd omega = symplectic_form(s.n_modes);
    h += std::complex<double>(0.0, 1.0) * omega;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h,
                                                       Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0) / std::max(1.0, s.cov.cwiseAbs().maxCoeff());
}

const char* validity_defect(const GaussianState& s) {
    if (s.n_modes < 1) return "state must have at least one mode";
    const int d = 2 * s.n_modes;
    if (s.mean.size() != d) return "mean length must be 2 x n_modes";
    if (s.cov.rows() != d || s.cov.cols() != d)
        return "covariance must be 2n x 2n";
    if (!s.mean.allFinite() || !s.cov.allFinite())
        return "moments must be finite";
    const double scale = std::max(1.0, s.cov.cwiseAbs().maxCoeff());
    if ((s.cov - s.cov.transpose()).cwiseAbs().maxCoeff() >
        tol::cov_symmetry_rel * scale)
        return "covariance must be symmetric";
    if (min_uncertainty_eigenvalue(s) < tol::uncertainty_eigen)
        return "covariance violates the uncertainty relation";
    return nullptr;
}

} // namespace

Eigen::MatrixXd symplectic_form(int n_modes) {
    Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
    for (int i = 0; i < n_modes; ++i) {
        omega(2 * i, 2 * i + 1) = 1.0;
        omega(2 * i + 1, 2 * i) = -1.0;
    }
    return omega;
}

bool is_valid_state(const GaussianState& s) {
    return validity_defect(s) == nullptr;
}

void require_valid_state(const GaussianState& s) {
    if (const char* defect = validity_defect(s))
        throw std::invalid_argument(std::string("invalid Gaussian state: ") +
                                    defect);
}

GaussianState vacuum_state(int n_modes) {
    if (n_modes < 1) throw std::invalid_argument("n_modes must be >= 1");
    GaussianState s;
    s.n_modes = n_modes;
    s.mean = Eigen::VectorXd::Zero(2 * n_modes);
    s.cov = Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes);
    return s;
}

GaussianState thermal_state(double n_mean) {
    if (n_mean < 0.0) throw std::invalid_argument("n_mean must be >= 0");
    GaussianState s = vacuum_state(1);
    s.cov *= 2.0 * n_mean + 1.0;
    return s;
}

GaussianState tmsv_state(double n_s) {
    if (n_s < 0.0) throw std::invalid_argument("n_s must be >= 0");
    GaussianState s = vacuum_state(2);
    const double diag = 2.0 * n_s + 1.0;
    const double cross = 2.0 * std::sqrt(n_s * (n_s + 1.0));
    s.cov.diagonal().setConstant(diag);
    s.cov(0, 2) = s.cov(2, 0) = cross;
    s.cov(1, 3) = s.cov(3, 1) = -cross;
    return s;
}

GaussianState coherent_state(double alpha_re, double alpha_im) {
    GaussianState s = vacuum_state(1);
    s.mean(0) = 2.0 * alpha_re;
    s.mean(1) = 2.0 * alpha_im;
    return s;
}

SymplecticOp two_mode_squeezer(double s) {
    const double c = std::cosh(s);
    const double h = std::sinh(s);
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(4, 4) * c;
    m(0, 2) = m(2, 0) = h;
    m(1, 3) = m(3, 1) = -h;
    return SymplecticOp{m};
}

GaussianState apply_symplectic(const SymplecticOp& op, const GaussianState& s) {
    const auto& m = op.matrix;
    if (m.rows() != m.cols() || m.rows() != 2 * s.n_modes)
        throw std::invalid_argument("symplectic dimension mismatch");
    const Eigen::MatrixXd omega = symplectic_form(s.n_modes);
    const double defect =
        (m * omega * m.transpose() - omega).cwiseAbs().maxCoeff();
    if (defect > tol::symplectic_defect * std::max(1.0, m.squaredNorm()))
        throw std::invalid_argument("matrix is not symplectic");
    GaussianState out = s;
    out.mean = m * s.mean;
    out.cov = m * s.cov * m.transpose();
    return out;
}

namespace {

void require_modes(const GaussianState& s, int n, const char* where) {
    if (s.n_modes != n)
        throw std::invalid_argument(std::string(where) + ": state must have " +
                                    std::to_string(n) + " mode(s)");
}

// Shared mean-displacement factor: -1/2 du^T (V1+V2)^{-1} du.
double mean_term(const Eigen::VectorXd& du, const Eigen::MatrixXd& vsum) {
    if (du.cwiseAbs().maxCoeff() == 0.0) return 0.0;
    return -0.5 * du.dot(vsum.ldlt().solve(du));
}

struct OneModeParts {
    double mean_term = 0.0;
    double dw = 0.0;       // (det V1 - 1)(det V2 - 1), floored at 0
    double delta_w = 0.0;  // det(V1 + V2)
};

OneModeParts one_mode_parts(const GaussianState& a, const GaussianState& b) {
    require_modes(a, 1, "fidelity_one_mode");
    require_modes(b, 1, "fidelity_one_mode");
    const Eigen::Matrix2d v1 = a.cov, v2 = b.cov;
    const Eigen::Matrix2d vsum = v1 + v2;
    OneModeParts p;
    p.mean_term = mean_term(b.mean - a.mean, vsum);
    p.delta_w = vsum.determinant();
    p.dw = std::max((v1.determinant() - 1.0) * (v2.determinant() - 1.0), 0.0);
    return p;
}

struct TwoModeParts {
    double mean_term = 0.0;
    double g = 0.0;     // sqrt(Gamma) + sqrt(Lambda)
    double t = 0.0;     // g^2 - Delta, floored at 0
    double delta = 0.0; // det(V1+V2)/16
};

TwoModeParts two_mode_parts(const GaussianState& a, const GaussianState& b) {
    require_modes(a, 2, "fidelity_two_mode");
    require_modes(b, 2, "fidelity_two_mode");
    const Eigen::Matrix4d v1 = a.cov, v2 = b.cov;
    const Eigen::Matrix4d vsum = v1 + v2;
    static const Eigen::Matrix4d omega = symplectic_form(2);

    TwoModeParts p;
    p.mean_term = mean_term(b.mean - a.mean, vsum);
    p.delta = vsum.determinant() / 16.0;
    const Eigen::Matrix4d w =
        omega * v1 * omega * v2 - Eigen::Matrix4d::Identity();
    const double gamma = w.determinant() / 16.0;
    const double lambda = std::max(det_cov_plus_i_omega(v1), 0.0) *
                          std::max(det_cov_plus_i_omega(v2), 0.0) / 16.0;
    p.g = std::sqrt(std::max(gamma, 0.0)) + std::sqrt(lambda);
    p.t = std::max(p.g * p.g - p.delta, 0.0);
    return p;
}

} // namespace

double fidelity_one_mode(const GaussianState& a, const GaussianState& b) {
    const OneModeParts p = one_mode_parts(a, b);
    return 2.0 * std::exp(p.mean_term) *
           (std::sqrt(p.delta_w + p.dw) + std::sqrt(p.dw)) / p.delta_w;
}

double log_fidelity_one_mode(const GaussianState& a, const GaussianState& b) {
    const OneModeParts p = one_mode_parts(a, b);
    return std::log(2.0) + p.mean_term +
           std::log(std::sqrt(p.delta_w + p.dw) + std::sqrt(p.dw)) -
           std::log(p.delta_w);
}

double bures_fidelity_one_mode(const GaussianState& a, const GaussianState& b) {
    return std::sqrt(fidelity_one_mode(a, b));
}

double det_cov_plus_i_omega(const Eigen::Matrix4d& v) {
    const Eigen::Matrix2d a = v.block<2, 2>(0, 0);
    const Eigen::Matrix2d b = v.block<2, 2>(2, 2);
    const Eigen::Matrix2d c = v.block<2, 2>(0, 2);
    return v.determinant() -
           (a.determinant() + b.determinant() + 2.0 * c.determinant()) + 1.0;
}

double fidelity_two_mode(const GaussianState& a, const GaussianState& b) {
    const TwoModeParts p = two_mode_parts(a, b);
    return std::exp(p.mean_term) * (p.g + std::sqrt(p.t)) / p.delta;
}

double log_fidelity_two_mode(const GaussianState& a, const GaussianState& b) {
    const TwoModeParts p = two_mode_parts(a, b);
    return p.mean_term + std::log(p.g + std::sqrt(p.t)) - std::log(p.delta);
}

double bures_fidelity_two_mode(const GaussianState& a, const GaussianState& b) {
    return std::sqrt(fidelity_two_mode(a, b));
}

double thermal_occupation(const GaussianState& s, int mode_index) {
    if (mode_index < 0 || mode_index >= s.n_modes)
        throw std::out_of_range("mode_index out of range");
    const Eigen::Matrix2d block =
        s.cov.block<2, 2>(2 * mode_index, 2 * mode_index);
    const double scale = std::max(1.0, block.cwiseAbs().maxCoeff());
    const bool isotropic =
        std::abs(block(0, 1)) <= tol::thermal_block_isotropy * scale &&
        std::abs(block(1, 0)) <= tol::thermal_block_isotropy * scale &&
        std::abs(block(0, 0) - block(1, 1)) <=
            tol::thermal_block_isotropy * scale;
    if (!isotropic)
        throw std::invalid_argument(
            "mode covariance is not isotropic (not a thermal mode)");
    return 0.5 * (0.5 * (block(0, 0) + block(1, 1)) - 1.0);
}

} // namespace cpf
