#include "sepkern/pairing.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "sepkern/errors.hpp"
#include "sepkern/quadrature.hpp"

namespace sepkern {

namespace {

double ipow(double t, int k) {
    if (k == 0) return 1.0;
    if (k < 0) return 1.0 / ipow(t, -k);
    double result = 1.0, base = t;
    for (int e = k; e > 0; e >>= 1) {
        if (e & 1) result *= base;
        base *= base;
    }
    return result;
}

// Antiderivatives of t^k sin(wt) / t^k cos(wt) for k >= 0, by parts.
double anti_power_trig(int k, Trig trig, double w, double t);

double anti_power_sin(int k, double w, double t) {
    if (k == 0) return -std::cos(w * t) / w;
    return -ipow(t, k) * std::cos(w * t) / w + (k / w) * anti_power_trig(k - 1, Trig::cos, w, t);
}

double anti_power_cos(int k, double w, double t) {
    if (k == 0) return std::sin(w * t) / w;
    return ipow(t, k) * std::sin(w * t) / w - (k / w) * anti_power_trig(k - 1, Trig::sin, w, t);
}

double anti_power_trig(int k, Trig trig, double w, double t) {
    return trig == Trig::sin ? anti_power_sin(k, w, t) : anti_power_cos(k, w, t);
}

bool closed_form_available(const Monomial& m, bool unbounded) {
    if (unbounded) return m.trig == Trig::none && m.power <= -2;
    if (m.trig == Trig::none) return true;
    return m.power >= 0;
}

// Closed integral of one monomial over [a, b] (b may be +inf). Assumes
// closed_form_available; integrability of negative powers checked here.
double closed_integral(const Monomial& m, double a, double b) {
    if (b == kInf) {
        // int_a^inf t^k dt, k <= -2
        if (a <= 0.0) {
            throw non_integrable("power tail must start at a positive endpoint");
        }
        return -m.coef * ipow(a, m.power + 1) / (m.power + 1);
    }
    if (m.trig == Trig::none) {
        if (m.power == -1) {
            if (a <= 0.0 && b >= 0.0) throw non_integrable("1/t across the origin");
            return m.coef * (std::log(std::abs(b)) - std::log(std::abs(a)));
        }
        if (m.power < -1 && a <= 0.0 && b >= 0.0) {
            throw non_integrable("negative power across the origin");
        }
        return m.coef * (ipow(b, m.power + 1) - ipow(a, m.power + 1)) / (m.power + 1);
    }
    return m.coef * (anti_power_trig(m.power, m.trig, m.omega, b) -
                     anti_power_trig(m.power, m.trig, m.omega, a));
}

// window ^ lambda; nullopt stands for the whole line.
std::optional<SupportSet> restrict_window(const std::optional<SupportSet>& window,
                                          const std::optional<SupportSet>& lambda) {
    if (window && lambda) return window->intersect(*lambda);
    if (window) return window;
    return lambda;
}

} // namespace

PairingValue integrate_expr(const FunctionExpr& u, const std::optional<SupportSet>& lambda,
                            const PairingOptions& opts) {
    PairingValue out;
    for (const Segment& seg : u.segments()) {
        std::optional<SupportSet> domain = restrict_window(seg.window, lambda);
        if (!domain) {
            throw non_integrable("integral over the whole line without a window");
        }
        for (const Interval& piece : domain->pieces()) {
            std::vector<const Monomial*> numeric;
            for (const Monomial& m : seg.terms) {
                if (closed_form_available(m, piece.unbounded())) {
                    out.value += closed_integral(m, piece.lo, piece.hi);
                } else if (piece.unbounded()) {
                    throw non_integrable("no closed tail integral for " +
                                         FunctionExpr::monomial(m).str());
                } else {
                    numeric.push_back(&m);
                }
            }
            if (!numeric.empty()) {
                if (piece.lo <= 0.0 && piece.hi >= 0.0) {
                    throw non_integrable("negative power across the origin");
                }
                auto f = [&numeric](double t) {
                    double v = 0.0;
                    for (const Monomial* m : numeric) v += m->eval(t);
                    return v;
                };
                QuadratureResult q = integrate_adaptive(f, piece.lo, piece.hi,
                                                        {opts.quad_tol, 40});
                out.value += q.value;
                out.abs_error += q.abs_error;
                out.method = EvalMethod::quadrature;
            }
        }
    }
    return out;
}

PairingValue pairing(const FunctionExpr& u, const FunctionExpr& v,
                     const std::optional<SupportSet>& lambda, const PairingOptions& opts) {
    return integrate_expr(u * v, lambda, opts);
}

namespace {

double min_frequency(const std::vector<Monomial>& terms) {
    double w = kInf;
    for (const Monomial& m : terms) {
        if (m.trig != Trig::none) w = std::min(w, m.omega);
    }
    return w;
}

// ess sup of |sum of terms| over one interval.
double sup_on_piece(const std::vector<Monomial>& terms, const Interval& piece) {
    if (terms.empty()) return 0.0;
    if (terms.size() == 1) {
        const Monomial& m = terms.front();
        if (m.trig == Trig::none) {
            if (m.power == 0) return std::abs(m.coef);
            if (m.power < 0 && piece.lo <= 0.0 &&
                (piece.unbounded() || piece.hi >= 0.0)) {
                throw non_integrable("negative power across the origin");
            }
            if (piece.unbounded()) {
                if (m.power > 0) throw non_integrable("unbounded power on a half line");
                return std::abs(m.eval(piece.lo));
            }
            // |c t^k| is monotone on each side of 0
            return std::max(std::abs(m.eval(piece.lo)), std::abs(m.eval(piece.hi)));
        }
        if (m.power == 0 && !piece.unbounded()) {
            // max |trig(w t)|: exactly 1 when a peak lies inside the piece
            const double shift = m.trig == Trig::sin ? 0.5 : 0.0;
            const double lo = m.omega * piece.lo / M_PI - shift;
            const double hi = m.omega * piece.hi / M_PI - shift;
            if (std::floor(hi) >= std::ceil(lo)) return std::abs(m.coef);
            return std::max(std::abs(m.eval(piece.lo)), std::abs(m.eval(piece.hi)));
        }
        if (m.power == 0 && piece.unbounded()) return std::abs(m.coef);
    }
    Interval scan = piece;
    if (piece.unbounded()) {
        for (const Monomial& m : terms) {
            if (m.power > 0) throw non_integrable("unbounded power on a half line");
            if (m.power < 0 && piece.lo <= 0.0) {
                throw non_integrable("negative power across the origin");
            }
        }
        // bounded tail: decaying powers and bounded oscillations; scan a
        // stretch long enough to contain many periods
        double len = 64.0 * (1.0 + std::abs(piece.lo));
        const double wmin = min_frequency(terms);
        if (wmin != kInf && wmin > 0.0) len = std::max(len, 16.0 * M_PI / wmin);
        scan = {piece.lo, piece.lo + len};
    }
    auto absval = [&terms](double t) {
        double v = 0.0;
        for (const Monomial& m : terms) v += m.eval(t);
        return std::abs(v);
    };
    const int n = 4096;
    const double h = scan.length() / n;
    double best = 0.0;
    double best_t = scan.lo;
    for (int i = 0; i <= n; ++i) {
        const double t = scan.lo + i * h;
        const double v = absval(t);
        if (v > best) {
            best = v;
            best_t = t;
        }
    }
    // golden-section refinement around the best cell
    double a = std::max(scan.lo, best_t - h);
    double b = std::min(scan.hi, best_t + h);
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double f1 = absval(x1), f2 = absval(x2);
    for (int it = 0; it < 80 && b - a > 1e-14 * (1.0 + std::abs(b)); ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = absval(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = absval(x1);
        }
    }
    return std::max(best, std::max(f1, f2));
}

} // namespace

double ess_sup(const FunctionExpr& u, const std::optional<SupportSet>& lambda) {
    double best = 0.0;
    for (const Segment& seg : u.segments()) {
        std::optional<SupportSet> domain = restrict_window(seg.window, lambda);
        if (!domain) {
            // whole line: only bounded oscillations can have a finite sup
            for (const Monomial& m : seg.terms) {
                if (m.power != 0) throw non_integrable("unbounded function on the whole line");
            }
            double len = 64.0;
            const double wmin = min_frequency(seg.terms);
            if (wmin != kInf && wmin > 0.0) len = std::max(len, 16.0 * M_PI / wmin);
            best = std::max(best, sup_on_piece(seg.terms, {-len, len}));
            continue;
        }
        for (const Interval& piece : domain->pieces()) {
            best = std::max(best, sup_on_piece(seg.terms, piece));
        }
    }
    return best;
}

double lp_norm(const FunctionExpr& u, const std::optional<SupportSet>& lambda, double p,
               const PairingOptions& opts) {
    if (p < 1.0) throw error("lp_norm: p must be >= 1");
    if (p == kInf) return ess_sup(u, lambda);
    if (p == 2.0) {
        double v = pairing(u, u, lambda, opts).value;
        return std::sqrt(std::max(0.0, v));
    }
    const long ip = std::lround(p);
    if (static_cast<double>(ip) == p && ip % 2 == 0 && ip <= 8) {
        // even integer exponent: |u|^p = u^p stays in the monomial algebra
        FunctionExpr up = u;
        for (long i = 1; i < ip; ++i) up = up * u;
        double v = integrate_expr(up, lambda, opts).value;
        return std::pow(std::max(0.0, v), 1.0 / p);
    }
    // generic exponent: numeric on finite pieces, closed power tail otherwise
    double total = 0.0;
    for (const Segment& seg : u.segments()) {
        std::optional<SupportSet> domain = restrict_window(seg.window, lambda);
        if (!domain) throw non_integrable("L_p norm over the whole line without a window");
        for (const Interval& piece : domain->pieces()) {
            if (piece.unbounded()) {
                if (seg.terms.size() != 1 || seg.terms.front().trig != Trig::none) {
                    throw non_integrable("L_p tail needs a single power monomial");
                }
                const Monomial& m = seg.terms.front();
                const double kp = m.power * p;
                if (kp >= -1.0 || piece.lo <= 0.0) {
                    throw non_integrable("divergent L_p tail");
                }
                total += std::pow(std::abs(m.coef), p) * std::pow(piece.lo, kp + 1.0) / (-kp - 1.0);
                continue;
            }
            auto f = [&seg, p](double t) {
                double v = 0.0;
                for (const Monomial& m : seg.terms) v += m.eval(t);
                return std::pow(std::abs(v), p);
            };
            total += integrate_adaptive(f, piece.lo, piece.hi, {opts.quad_tol, 40}).value;
        }
    }
    return std::pow(std::max(0.0, total), 1.0 / p);
}

double lp_norm(const FunctionExpr& u, double p, const PairingOptions& opts) {
    return lp_norm(u, std::nullopt, p, opts);
}

EqualityVerdict check_functional_equality(const FunctionExpr& f, const FunctionExpr& g,
                                          const SupportSet& g1, const SupportSet& g2,
                                          double tol) {
    EqualityVerdict verdict;
    const SupportSet common = g1.intersect(g2);
    const SupportSet only1 = g1.subtract(common);
    const SupportSet only2 = g2.subtract(common);

    verdict.scale = std::max(lp_norm(f, g1, 2.0), lp_norm(g, g2, 2.0));
    auto l2 = [](const FunctionExpr& u, const SupportSet& dom) {
        return dom.empty() ? 0.0 : lp_norm(u, dom, 2.0);
    };
    verdict.residuals[0] = l2(f - g, common);
    verdict.residuals[1] = l2(f, only1);
    verdict.residuals[2] = l2(g, only2);

    const double cut = tol * std::max(verdict.scale, 1e-300);
    const char* names[3] = {"G1^G2", "G1\\G", "G2\\G"};
    int worst = 0;
    for (int i = 1; i < 3; ++i) {
        if (verdict.residuals[i] > verdict.residuals[worst]) worst = i;
    }
    if (verdict.residuals[worst] > cut) {
        verdict.equal = false;
        verdict.witness = names[worst];
        verdict.residual = verdict.residuals[worst];
    }
    return verdict;
}

} // namespace sepkern
