#pragma once

#include <cstdint>
#include <optional>

#include "sepkern/operators.hpp"

namespace sepkern {

enum class BoundMethod { hoelder_sum, schur };

struct NormBound {
    double p = 2.0;
    double upper = 0.0;
    BoundMethod method = BoundMethod::hoelder_sum;
    std::optional<double> empirical_lower;
};

// |scalar| + sum_i ||left_i||_{L_p} ||right_i||_{L_q}, the term-wise Hoelder
// estimate with exact factor norms.
NormBound hoelder_bound(const SeparableOperator& op, double p);

// max(sup_t int |k(t,s)| ds, sup_s int |k(t,s)| dt); an upper bound for the
// operator norm on every L_p simultaneously.
NormBound schur_bound(const SeparableOperator& op);

// Sup-relaxed per-term bound sum_i N_p(left_i) M_q(right_i): trig factors are
// bounded by 1 and replaced by |window|^{1/p}; a single power monomial keeps
// its exact L_p norm. This reproduces the window-geometry constants of the
// explicit convergence estimates.
double box_bound(const SeparableOperator& op, double p);

// Largest ratio ||A x||_p / ||x||_p over `trials` seeded random probes; a
// lower estimate for the operator norm. For p = 2 the best probe is refined
// by two power-iteration steps through the adjoint.
double empirical_norm(const SeparableOperator& op, double p, int trials, std::uint64_t seed);

} // namespace sepkern
