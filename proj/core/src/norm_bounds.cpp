#include "sepkern/norm_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "sepkern/errors.hpp"
#include "sepkern/rng.hpp"

namespace sepkern {

namespace {

double ipow_abs(double t, int k) {
    double v = std::pow(std::abs(t), std::abs(k));
    return k < 0 ? 1.0 / v : v;
}

// sup over the window of |t^k|
double power_sup(const SupportSet& window, int k) {
    if (k == 0) return 1.0;
    double best = 0.0;
    for (const Interval& piece : window.pieces()) {
        if (piece.unbounded()) {
            if (k > 0) throw non_integrable("unbounded power factor");
            if (piece.lo <= 0.0) throw non_integrable("negative power across the origin");
            best = std::max(best, ipow_abs(piece.lo, k));
            continue;
        }
        if (k < 0 && piece.lo <= 0.0 && piece.hi >= 0.0) {
            throw non_integrable("negative power across the origin");
        }
        best = std::max(best, std::max(ipow_abs(piece.lo, k), ipow_abs(piece.hi, k)));
    }
    return best;
}

// One side of the box bound: sup-relaxed coefficient mass times
// |window|^{1/e}; exact L_p norm for a single pure power monomial.
double box_side(const FunctionExpr& f, double e) {
    const auto& segs = f.segments();
    if (segs.size() == 1 && segs[0].terms.size() == 1 &&
        segs[0].terms[0].trig == Trig::none && segs[0].terms[0].power != 0) {
        return lp_norm(f, e);
    }
    double total = 0.0;
    for (const Segment& seg : segs) {
        if (!seg.window) throw non_integrable("box bound needs windowed factors");
        double mass = 0.0;
        for (const Monomial& m : seg.terms) {
            mass += std::abs(m.coef) * power_sup(*seg.window, m.power);
        }
        double meas = 1.0;
        if (e != kInf) {
            const double w = seg.window->measure();
            if (w == kInf) throw non_integrable("box bound with an unbounded window");
            meas = std::pow(w, 1.0 / e);
        }
        total += mass * meas;
    }
    return total;
}

} // namespace

NormBound hoelder_bound(const SeparableOperator& op, double p) {
    const double q = conjugate_exponent(p);
    NormBound bound;
    bound.p = p;
    bound.method = BoundMethod::hoelder_sum;
    bound.upper = std::abs(op.scalar);
    for (const KernelTerm& term : op.terms) {
        bound.upper += lp_norm(term.left, p) * lp_norm(term.right, q);
    }
    return bound;
}

double box_bound(const SeparableOperator& op, double p) {
    const double q = conjugate_exponent(p);
    double total = std::abs(op.scalar);
    for (const KernelTerm& term : op.terms) {
        total += box_side(term.left, p) * box_side(term.right, q);
    }
    return total;
}

namespace {

// L1 norm in s of the kernel section k(t, .) for fixed t
double section_l1(const std::vector<KernelTerm>& terms, double t) {
    FunctionExpr section;
    for (const KernelTerm& term : terms) {
        const double w = term.left.eval(t);
        if (w != 0.0) section += term.right * w;
    }
    if (section.structurally_zero()) return 0.0;
    return lp_norm(section, std::nullopt, 1.0, {1e-10});
}

// sup_t of section_l1 over the union of the left windows
double sup_section_l1(const std::vector<KernelTerm>& terms) {
    SupportSet domain;
    for (const KernelTerm& term : terms) {
        std::optional<SupportSet> w = term.left.domain();
        if (!w) throw non_integrable("Schur bound needs windowed output factors");
        domain = domain.unite(*w);
    }
    auto value = [&terms](double t) { return section_l1(terms, t); };
    double best = 0.0;
    for (const Interval& piece : domain.pieces()) {
        std::vector<double> grid;
        if (piece.unbounded()) {
            if (piece.lo <= 0.0) throw non_integrable("unbounded output window below 0");
            // decaying tail: geometric samples past the endpoint
            for (int j = 0; j <= 200; ++j) grid.push_back(piece.lo * std::pow(2.0, j / 8.0));
        } else {
            const int n = 1024;
            for (int i = 0; i <= n; ++i) grid.push_back(piece.lo + piece.length() * i / n);
        }
        double piece_best = 0.0, best_t = grid.front();
        for (double t : grid) {
            const double v = value(t);
            if (v > piece_best) {
                piece_best = v;
                best_t = t;
            }
        }
        // golden refinement around the best sample
        double span = piece.unbounded() ? best_t * 0.09 : piece.length() / 1024.0;
        double a = std::max(piece.lo, best_t - span);
        double b = piece.unbounded() ? best_t + span : std::min(piece.hi, best_t + span);
        const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
        double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
        double f1 = value(x1), f2 = value(x2);
        for (int it = 0; it < 48 && b - a > 1e-13 * (1.0 + std::abs(b)); ++it) {
            if (f1 < f2) {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + phi * (b - a);
                f2 = value(x2);
            } else {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - phi * (b - a);
                f1 = value(x1);
            }
        }
        best = std::max({best, piece_best, f1, f2});
    }
    return best;
}

} // namespace

NormBound schur_bound(const SeparableOperator& op) {
    NormBound bound;
    bound.p = 0.0; // valid on every L_p
    bound.method = BoundMethod::schur;
    if (op.terms.empty()) {
        bound.upper = std::abs(op.scalar);
        return bound;
    }
    const double lambda1 = sup_section_l1(op.terms);
    std::vector<KernelTerm> transposed;
    transposed.reserve(op.terms.size());
    for (const KernelTerm& term : op.terms) transposed.push_back({term.right, term.left});
    const double lambda2 = sup_section_l1(transposed);
    bound.upper = std::abs(op.scalar) + std::max(lambda1, lambda2);
    return bound;
}

namespace {

// fixed probe dictionary: low-degree polynomials in the normalised window
// coordinate plus two harmonics of the operator's own frequency
std::vector<FunctionExpr> probe_dictionary(const SeparableOperator& op, const SupportSet& window) {
    const Interval hull = window.hull();
    const double lo = hull.lo;
    const double len = hull.hi - hull.lo;
    double omega = 0.0;
    for (const KernelTerm& term : op.terms) {
        for (const FunctionExpr* f : {&term.right, &term.left}) {
            for (const Segment& seg : f->segments()) {
                for (const Monomial& m : seg.terms) {
                    if (m.trig != Trig::none && omega == 0.0) omega = m.omega;
                }
            }
        }
    }
    if (omega == 0.0) omega = M_PI / len;

    // u = (t - lo)/len expanded in t monomials
    FunctionExpr u = FunctionExpr::power(1, 1.0 / len) + FunctionExpr::constant(-lo / len);
    std::vector<FunctionExpr> atoms;
    atoms.push_back(FunctionExpr::constant(1.0));
    atoms.push_back(u);
    atoms.push_back(u * u);
    atoms.push_back(u * u * u);
    atoms.push_back(FunctionExpr::sin_wave(omega));
    atoms.push_back(FunctionExpr::cos_wave(omega));
    atoms.push_back(FunctionExpr::sin_wave(2.0 * omega));
    atoms.push_back(FunctionExpr::cos_wave(2.0 * omega));
    for (FunctionExpr& a : atoms) a = a.windowed(window);
    return atoms;
}

SupportSet probe_window(const SeparableOperator& op) {
    SupportSet window = op.support;
    if (!window.unbounded()) return window;
    // cap a half-line domain: probes with mass near the endpoint already
    // give valid lower bounds
    std::vector<Interval> pieces;
    for (const Interval& piece : window.pieces()) {
        if (piece.unbounded()) {
            pieces.push_back({piece.lo, piece.lo + 32.0 * (1.0 + std::abs(piece.lo))});
        } else {
            pieces.push_back(piece);
        }
    }
    return SupportSet(pieces);
}

} // namespace

double empirical_norm(const SeparableOperator& op, double p, int trials, std::uint64_t seed) {
    if (trials < 1) throw error("empirical_norm: trials must be >= 1");
    if (op.terms.empty() && op.scalar == 0.0) return 0.0;
    const SupportSet window = probe_window(op);
    if (window.empty()) return 0.0;
    const std::vector<FunctionExpr> atoms = probe_dictionary(op, window);

    double best = 0.0;
    FunctionExpr best_probe;
    for (int trial = 0; trial < trials; ++trial) {
        SplitMix64 rng = SplitMix64::indexed(seed, static_cast<std::uint64_t>(trial));
        FunctionExpr x;
        for (const FunctionExpr& atom : atoms) x += atom * rng.uniform(-1.0, 1.0);
        const double nx = lp_norm(x, p);
        if (!(nx > 1e-12)) continue;
        const double ratio = lp_norm(apply(op, x), p) / nx;
        if (ratio > best) {
            best = ratio;
            best_probe = x;
        }
    }

    // p = 2: sharpen the best probe with two power-iteration steps
    if (p == 2.0 && best > 0.0 && op.scalar == 0.0) {
        try {
            const SeparableOperator adj = adjoint(op, false);
            FunctionExpr x = best_probe;
            for (int it = 0; it < 2; ++it) {
                FunctionExpr y = apply(op, x);
                const double ny = lp_norm(y, 2.0);
                if (!(ny > 1e-14)) break;
                FunctionExpr z = apply(adj, y * (1.0 / ny));
                const double nz = lp_norm(z, 2.0);
                if (!(nz > 1e-14)) break;
                x = z * (1.0 / nz);
                best = std::max(best, lp_norm(apply(op, x), 2.0));
            }
        } catch (const error&) {
            // adjoint unavailable: keep the raw probe estimate
        }
    }
    return best;
}

} // namespace sepkern
