#pragma once

// All numerical tolerance constants in one place so that tests, library
// checks and documentation agree on a single source of truth.

namespace cpf::tol {

// state validation
inline constexpr double cov_symmetry_rel = 1e-12;       // |V - V^T| relative
inline constexpr double uncertainty_eigen = -1e-9;      // min eig of V + i*Omega
inline constexpr double symplectic_defect = 1e-10;      // |S Omega S^T - Omega|

// fidelity
inline constexpr double fidelity_self = 1e-12;          // F^2(rho,rho) vs 1
inline constexpr double fidelity_product_split = 1e-10; // two-mode vs product of one-mode
inline constexpr double fidelity_vs_fock = 1e-6;        // closed form vs truncated oracle

// fock oracle
inline constexpr double fock_leakage_max = 1e-8;        // truncation mass allowed in comparisons
inline constexpr double fock_hermiticity = 1e-12;
inline constexpr double fock_eigen_floor = -1e-10;      // density matrix eigenvalue floor

// receiver formulas
inline constexpr double cn_closed_vs_recursive = 1e-12; // relative
inline constexpr double dd_self_check_rel = 1e-12;      // value at p bits vs 2p bits
inline constexpr double thermal_block_isotropy = 1e-9;  // c*I test in thermal_occupation

// nulling pipeline
inline constexpr double reading_null_residual = 1e-9;   // signal block vs identity
inline constexpr double sfg_null_residual_rel = 1e-6;   // cross block, relative to pre-squeeze

} // namespace cpf::tol
