#pragma once

#include <cpf/gus.hpp>
#include <cpf/target_finding.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

// Closed-form-vs-oracle verification suites, shared by the `verify`
// subcommand and the acceptance battery. Each suite returns a report the
// caller renders; `pass` collects the suite verdict.

namespace cpf::cli {

struct CnSuiteCase {
    int m = 0;
    ErrorPair pair;
    double exact = 0.0;
    double estimate = 0.0;
    double std_error = 0.0;
    double deviation_sigmas = 0.0;
    bool pass = false;
};

struct CnSuiteReport {
    std::vector<CnSuiteCase> cases;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    bool pass = false;
};

// Runs the receiver-protocol Monte Carlo against the closed form on the
// standard case list {(2,.3,.3), (50,.05,.2), (100,.1,.1)}; a case
// passes when the estimate is within 3 standard errors.
CnSuiteReport run_cn_suite(std::uint64_t trials, std::uint64_t seed);

struct FidelitySuiteReport {
    int one_mode_pairs = 0;
    int two_mode_pairs = 0;
    double max_dev = 0.0;      // max |F2_closed - F2_fock|
    double tolerance = 0.0;
    std::string worst_kind;    // "one-mode" / "two-mode"
    int worst_index = -1;
    bool pass = false;
};

// Draws `pairs` random state pairs (alternating one- and two-mode;
// displaced squeezed thermal states and displaced lossy two-mode
// squeezed vacuum, total mean photons <= 3) and compares the Gaussian
// fidelity closed forms against the truncated-Fock Uhlmann fidelity.
FidelitySuiteReport run_fidelity_suite(int pairs, std::uint64_t seed);

struct DdSuiteReport {
    TargetFindingParams params;
    double closed_form = 0.0;
    double estimate = 0.0;
    double std_error = 0.0;
    double deviation_sigmas = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    bool pass = false;
};

// Direct-detection closed form against a photon-count simulation of the
// pulse-position receiver: per trial, one displaced-thermal count for
// the target sector and m-1 thermal counts, winner by maximum count with
// uniform tie-break. Fixed desk-scale point M=10, N_S=0.01, N_B=2,
// eta=0.1 (the closed form depends on eta M N_S only).
DdSuiteReport run_dd_suite(int m, std::uint64_t trials, std::uint64_t seed);

// Dispatches a suite by name ("cn", "fidelity", "dd"), filling defaults
// for absent options, and renders the report. Returns a process exit
// code (0 pass, 1 fail); unknown suite names throw.
int run_verify(const std::string& suite, std::optional<double> trials,
               std::optional<std::uint64_t> seed, std::optional<int> m, std::ostream& out);

} // namespace cpf::cli
