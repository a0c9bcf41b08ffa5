#pragma once

#include <functional>

namespace sepkern {

struct QuadratureResult {
    double value = 0.0;
    double abs_error = 0.0; // error estimate, not a strict bound
    int panels = 0;
};

struct QuadratureOptions {
    double abs_tol = 1e-12;
    int max_depth = 40;
};

// Adaptive bisection with a fixed Gauss(7)/Kronrod(15) pair per panel.
// Splits the panel with the largest error estimate first.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b,
                                    const QuadratureOptions& opts = {});

} // namespace sepkern
