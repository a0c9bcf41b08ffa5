#include "sepkern/quadrature.hpp"

#include <cmath>
#include <queue>
#include <vector>

namespace sepkern {

namespace {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1] (QUADPACK constants).
// xgk: Kronrod abscissae (positive half); odd entries are the Gauss points.
const double xgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
const double wgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
const double wg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct Panel {
    double a, b;
    double value;
    double err;
    int depth;
};

Panel evaluate_panel(const std::function<double(double)>& f, double a, double b, int depth) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double k15 = 0.0;
    double g7 = 0.0;
    for (int i = 0; i < 7; ++i) {
        const double fi = f(c + h * xgk[i]) + f(c - h * xgk[i]);
        k15 += wgk[i] * fi;
        if (i % 2 == 1) g7 += wg[i / 2] * fi;
    }
    const double f0 = f(c);
    k15 += wgk[7] * f0;
    g7 += wg[3] * f0;
    k15 *= h;
    g7 *= h;
    double err = std::abs(k15 - g7);
    // QUADPACK-style sharpening of the raw G7/K15 difference
    const double scaled = 200.0 * err;
    err = std::min(err, scaled * std::sqrt(scaled));
    return {a, b, k15, err, depth};
}

} // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b,
                                    const QuadratureOptions& opts) {
    QuadratureResult result;
    if (!(b > a)) return result;

    auto worse = [](const Panel& lhs, const Panel& rhs) { return lhs.err < rhs.err; };
    std::priority_queue<Panel, std::vector<Panel>, decltype(worse)> queue(worse);
    queue.push(evaluate_panel(f, a, b, 0));
    double total_err = queue.top().err;

    while (total_err > opts.abs_tol && queue.top().err > 0.0 &&
           queue.top().depth < opts.max_depth) {
        Panel panel = queue.top();
        queue.pop();
        const double mid = 0.5 * (panel.a + panel.b);
        Panel left = evaluate_panel(f, panel.a, mid, panel.depth + 1);
        Panel right = evaluate_panel(f, mid, panel.b, panel.depth + 1);
        total_err += left.err + right.err - panel.err;
        queue.push(left);
        queue.push(right);
    }

    while (!queue.empty()) {
        result.value += queue.top().value;
        result.abs_error += queue.top().err;
        ++result.panels;
        queue.pop();
    }
    return result;
}

} // namespace sepkern
