#pragma once

#include <optional>
#include <string>

#include "sepkern/expr.hpp"
#include "sepkern/support.hpp"

namespace sepkern {

enum class EvalMethod { closed_form, quadrature };

// Value of an integral together with how it was obtained. Closed-form
// results carry abs_error 0 (rounding only); quadrature results carry the
// panel error estimate.
struct PairingValue {
    double value = 0.0;
    EvalMethod method = EvalMethod::closed_form;
    double abs_error = 0.0;
};

struct PairingOptions {
    double quad_tol = 1e-12;
};

// Domain arguments are optional: nullopt means the whole real line, in which
// case the expression's own windows must keep the integral finite.

// Integral of u over lambda intersected with u's windows.
PairingValue integrate_expr(const FunctionExpr& u,
                            const std::optional<SupportSet>& lambda = std::nullopt,
                            const PairingOptions& opts = {});

// Q_lambda(u, v) = int_lambda u v dmu. Windows of u and v restrict further.
PairingValue pairing(const FunctionExpr& u, const FunctionExpr& v,
                     const std::optional<SupportSet>& lambda = std::nullopt,
                     const PairingOptions& opts = {});

// L_p norm over lambda; p = kInf gives the essential supremum.
double lp_norm(const FunctionExpr& u, const std::optional<SupportSet>& lambda, double p,
               const PairingOptions& opts = {});

// L_p norm over u's own windows.
double lp_norm(const FunctionExpr& u, double p, const PairingOptions& opts = {});

double ess_sup(const FunctionExpr& u, const std::optional<SupportSet>& lambda = std::nullopt);

// Verdict of the f/g functional-equality test: f and g induce the same
// functional x -> int f x iff f = g a.e. on G1 n G2, f = 0 a.e. on G1 \ G,
// g = 0 a.e. on G2 \ G.
struct EqualityVerdict {
    bool equal = true;
    std::string witness;       // "G1\\G", "G2\\G" or "G1^G2" when unequal
    double residual = 0.0;     // L2 norm of the offending restriction
    double residuals[3] = {0.0, 0.0, 0.0};
    double scale = 0.0;
};

EqualityVerdict check_functional_equality(const FunctionExpr& f, const FunctionExpr& g,
                                          const SupportSet& g1, const SupportSet& g2,
                                          double tol = 1e-9);

} // namespace sepkern
