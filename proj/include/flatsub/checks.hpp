#ifndef FLATSUB_CHECKS_HPP
#define FLATSUB_CHECKS_HPP

#include <optional>
#include <vector>

#include "flatsub/problem.hpp"
#include "flatsub/report.hpp"
#include "flatsub/sweep.hpp"

namespace flatsub {

// Shared knobs for the grid-sweep checks. In rational mode a check passes
// only if its residual vanishes exactly; in float mode it compares against
// the algebra tolerance.
struct CheckOptions {
    ArithmeticMode mode = ArithmeticMode::rational;
    ExecPolicy policy = ExecPolicy::parallel;
    int grid_override = 0;                        // 0 = spec resolution
    std::optional<std::vector<Rational>> point;   // single-point debug mode
};

// Associativity identity residual of the potential over the grid.
ResidualReport run_wdvv_check(const ProblemSpec& spec, const CheckOptions& opt);

// Gauss, Ricci, and integrability residuals of the ψ system.
std::vector<ResidualReport> run_gcr_check(const ProblemSpec& spec, const CheckOptions& opt);

// Potential-case identity: Gauss = c·Ricci = reindexed associativity
// tensor, entrywise, for μ = c·η.
ResidualReport run_reduction_check(const ProblemSpec& spec, const Rational& c,
                                   const CheckOptions& opt);

// Weingarten commutator defect over the grid (max over pairs and entries).
ResidualReport run_commutator_check(const ProblemSpec& spec, const CheckOptions& opt);

// Signature of blockdiag(η, μ): {positive, negative}.
std::pair<int, int> ambient_signature(const ProblemSpec& spec);

} // namespace flatsub

#endif
