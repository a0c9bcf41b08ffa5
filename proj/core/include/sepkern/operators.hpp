#pragma once

#include <vector>

#include "sepkern/expr.hpp"
#include "sepkern/pairing.hpp"
#include "sepkern/polynomial.hpp"
#include "sepkern/support.hpp"

namespace sepkern {

// One rank-one kernel piece left(t) * right(s). The left factor carries the
// output window, the right factor is windowed by the integration domain, so
// every kernel is a function on R x R that vanishes outside its windows.
struct KernelTerm {
    FunctionExpr left;
    FunctionExpr right;
};

// scalar * Id + integral operator with kernel sum_i left_i(t) right_i(s)
// over `support`, acting on L_p. Raw constructed operators have scalar 0;
// only `polynomial` produces a nonzero scalar part.
struct SeparableOperator {
    double scalar = 0.0;
    std::vector<KernelTerm> terms;
    SupportSet support;
    double p = 2.0;

    int rank() const { return static_cast<int>(terms.size()); }
};

double conjugate_exponent(double p);

// Windows the right factors by `support` and (optionally) checks that each
// left factor is in L_p of its window and each right factor in L_q(support).
SeparableOperator make_operator(std::vector<KernelTerm> terms, SupportSet support,
                                double p, bool validate = true);

// (A x)(t) = scalar x(t) + sum_i Q(right_i, x) left_i(t)
FunctionExpr apply(const SeparableOperator& op, const FunctionExpr& x);

// Kernel composition: (A B) has terms a_m(t) Q(b_k, c_m) e_k(s); the inner
// pairing runs over the left operator's support (the right factors of A are
// windowed by it). Identity parts distribute.
SeparableOperator compose(const SeparableOperator& a, const SeparableOperator& b);

// A^m through the Gram recurrence: with M[i][j] = Q(a_j, c_i), the kernel of
// A^m is sum_ij (M^(m-1))_ij a_i(t) c_j(s). Requires scalar = 0.
SeparableOperator power(const SeparableOperator& op, int m);

// F(A) = f_0 Id + sum_{j>=1} f_j A^j, evaluated with a single Gram-matrix
// Horner pass. Requires scalar = 0.
SeparableOperator polynomial(const PolynomialSpec& f, const SeparableOperator& op);

// A B - B A; both operators must share the integration domain.
SeparableOperator commutator(const SeparableOperator& a, const SeparableOperator& b);

// Kernel transpose k*(t,s) = k(s,t); acts on L_q, support becomes the union
// of the former output windows. Requires scalar = 0.
SeparableOperator adjoint(const SeparableOperator& op, bool validate = true);

SeparableOperator op_add(const SeparableOperator& a, const SeparableOperator& b);
SeparableOperator op_sub(const SeparableOperator& a, const SeparableOperator& b);
SeparableOperator op_scale(const SeparableOperator& a, double s);

// Merge proportional left factors (structural fingerprints), then reduce the
// rank by Gram-based pivoted elimination at relative tolerance rel_tol.
void merge_terms(SeparableOperator& op, double rel_tol = 1e-10);

// L2(R x R) norm of the kernel: sqrt(sum_kl Q(u_k,u_l) Q(v_k,v_l)). The
// optional s_restrict intersects the s-side domain.
double kernel_norm2(const std::vector<KernelTerm>& terms,
                    const std::optional<SupportSet>& s_restrict = std::nullopt);
double kernel_norm(const SeparableOperator& op);

// L2 kernel distance; kernels are compared as functions on R x R, so
// operators with different supports are compared in the Lemma-1 sense
// (zero extension outside the windows).
double operator_residual(const SeparableOperator& a, const SeparableOperator& b);

// scalar difference <= 1e-12 and kernel residual <= tol * scale
bool operators_equal(const SeparableOperator& a, const SeparableOperator& b, double tol = 1e-9);

bool is_zero_operator(const SeparableOperator& op, double tol = 1e-12);

} // namespace sepkern
