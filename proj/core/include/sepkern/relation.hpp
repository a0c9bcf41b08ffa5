#pragma once

#include "sepkern/operators.hpp"
#include "sepkern/polynomial.hpp"

namespace sepkern {

// The two-sided relation H(A) B = B F(A) for raw kernel operators A, B
// (scalar parts zero) on a common L_p.
struct RelationSpec {
    PolynomialSpec H;
    PolynomialSpec F;
    SeparableOperator A;
    SeparableOperator B;
};

// Outcome of a verification. residuals[] are the relative L2 kernel
// residuals of the three conditions:
//   1. on X x G:        (h0-f0) K_B + K_{H+(A)B} = K_{B F+(A)}
//   2. on X x (G_A\G):  K_{B F+(A)} = 0
//   3. on X x (G_B\G):  (f0-h0) K_B = K_{H+(A)B}
// where G = G_A n G_B and H+, F+ drop the constant coefficient. holds is
// equivalent to all residuals <= tol; the same verdict is recomputed by
// direct operator comparison and the two must agree.
struct RelationReport {
    bool holds = false;
    double residuals[3] = {0.0, 0.0, 0.0};
    double scale = 0.0;
    int worst_condition = 0; // 1..3 when holds is false
    bool direct_holds = false;
};

RelationReport verify_two_sided(const RelationSpec& spec, double tol = 1e-9);

// A B = B F(A)  (H(z) = z)
RelationReport verify_covariance(const PolynomialSpec& f, const SeparableOperator& a,
                                 const SeparableOperator& b, double tol = 1e-9);

// B A = H(A) B  (F(z) = z)
RelationReport verify_reciprocal(const PolynomialSpec& h, const SeparableOperator& a,
                                 const SeparableOperator& b, double tol = 1e-9);

// A B = delta B A^d
RelationReport verify_monomial(double delta, int d, const SeparableOperator& a,
                               const SeparableOperator& b, double tol = 1e-9);

} // namespace sepkern
