#include "sepkern/expr.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <tuple>

namespace sepkern {

namespace {

// ipow for possibly negative integer exponents
double ipow(double t, int k) {
    if (k == 0) return 1.0;
    if (k < 0) return 1.0 / ipow(t, -k);
    double result = 1.0;
    double base = t;
    int e = k;
    while (e > 0) {
        if (e & 1) result *= base;
        base *= base;
        e >>= 1;
    }
    return result;
}

// sin/cos(omega t) with omega normalised positive; omega == 0 handled at
// normalisation time, so trig != none implies omega > 0 here.
double trig_eval(Trig trig, double omega, double t) {
    switch (trig) {
        case Trig::sin: return std::sin(omega * t);
        case Trig::cos: return std::cos(omega * t);
        default: return 1.0;
    }
}

void push_normalized(std::vector<Monomial>& out, double coef, int power, Trig trig, double omega) {
    if (coef == 0.0) return;
    if (trig == Trig::none) {
        out.push_back({coef, power, Trig::none, 0.0});
        return;
    }
    if (omega == 0.0) {
        if (trig == Trig::cos) out.push_back({coef, power, Trig::none, 0.0});
        return; // sin(0) == 0
    }
    if (omega < 0.0) {
        if (trig == Trig::sin) coef = -coef;
        omega = -omega;
    }
    out.push_back({coef, power, trig, omega});
}

std::tuple<int, int, double> mono_key(const Monomial& m) {
    return {m.power, static_cast<int>(m.trig), m.omega};
}

bool window_equal(const std::optional<SupportSet>& a, const std::optional<SupportSet>& b) {
    if (a.has_value() != b.has_value()) return false;
    if (!a.has_value()) return true;
    return *a == *b;
}

bool window_less(const std::optional<SupportSet>& a, const std::optional<SupportSet>& b) {
    if (a.has_value() != b.has_value()) return !a.has_value();
    if (!a.has_value()) return false;
    const auto& pa = a->pieces();
    const auto& pb = b->pieces();
    for (std::size_t i = 0; i < std::min(pa.size(), pb.size()); ++i) {
        if (pa[i].lo != pb[i].lo) return pa[i].lo < pb[i].lo;
        if (pa[i].hi != pb[i].hi) return pa[i].hi < pb[i].hi;
    }
    return pa.size() < pb.size();
}

} // namespace

double Monomial::eval(double t) const {
    return coef * ipow(t, power) * trig_eval(trig, omega, t);
}

void multiply_monomials(const Monomial& a, const Monomial& b, std::vector<Monomial>& out) {
    const double c = a.coef * b.coef;
    const int k = a.power + b.power;
    if (a.trig == Trig::none && b.trig == Trig::none) {
        push_normalized(out, c, k, Trig::none, 0.0);
        return;
    }
    if (a.trig == Trig::none) {
        push_normalized(out, c, k, b.trig, b.omega);
        return;
    }
    if (b.trig == Trig::none) {
        push_normalized(out, c, k, a.trig, a.omega);
        return;
    }
    const double wm = a.omega - b.omega;
    const double wp = a.omega + b.omega;
    if (a.trig == Trig::sin && b.trig == Trig::sin) {
        // sin x sin y = (cos(x-y) - cos(x+y)) / 2
        push_normalized(out, 0.5 * c, k, Trig::cos, wm);
        push_normalized(out, -0.5 * c, k, Trig::cos, wp);
    } else if (a.trig == Trig::cos && b.trig == Trig::cos) {
        // cos x cos y = (cos(x-y) + cos(x+y)) / 2
        push_normalized(out, 0.5 * c, k, Trig::cos, wm);
        push_normalized(out, 0.5 * c, k, Trig::cos, wp);
    } else if (a.trig == Trig::sin && b.trig == Trig::cos) {
        // sin x cos y = (sin(x+y) + sin(x-y)) / 2
        push_normalized(out, 0.5 * c, k, Trig::sin, wp);
        push_normalized(out, 0.5 * c, k, Trig::sin, wm);
    } else {
        // cos x sin y = (sin(x+y) - sin(x-y)) / 2
        push_normalized(out, 0.5 * c, k, Trig::sin, wp);
        push_normalized(out, -0.5 * c, k, Trig::sin, wm);
    }
}

FunctionExpr FunctionExpr::constant(double c) {
    return monomial({c, 0, Trig::none, 0.0});
}

FunctionExpr FunctionExpr::power(int k, double coef) {
    return monomial({coef, k, Trig::none, 0.0});
}

FunctionExpr FunctionExpr::sin_wave(double omega, double coef) {
    return monomial({coef, 0, Trig::sin, omega});
}

FunctionExpr FunctionExpr::cos_wave(double omega, double coef) {
    return monomial({coef, 0, Trig::cos, omega});
}

FunctionExpr FunctionExpr::monomial(const Monomial& m) {
    FunctionExpr f;
    Segment seg;
    push_normalized(seg.terms, m.coef, m.power, m.trig, m.omega);
    f.segs_.push_back(std::move(seg));
    f.canonicalize();
    return f;
}

void FunctionExpr::canonicalize() {
    auto pack = [](std::vector<Monomial>& terms) {
        std::sort(terms.begin(), terms.end(), [](const Monomial& a, const Monomial& b) {
            return mono_key(a) < mono_key(b);
        });
        std::vector<Monomial> packed;
        for (const Monomial& m : terms) {
            if (!packed.empty() && mono_key(packed.back()) == mono_key(m)) {
                packed.back().coef += m.coef;
            } else {
                packed.push_back(m);
            }
        }
        std::erase_if(packed, [](const Monomial& m) { return m.coef == 0.0; });
        terms = std::move(packed);
    };
    std::erase_if(segs_, [](const Segment& s) { return s.window && s.window->empty(); });
    // fold segments that share a window
    std::vector<Segment> folded;
    for (Segment& seg : segs_) {
        bool merged = false;
        for (Segment& dst : folded) {
            if (window_equal(dst.window, seg.window)) {
                dst.terms.insert(dst.terms.end(), seg.terms.begin(), seg.terms.end());
                merged = true;
                break;
            }
        }
        if (!merged) folded.push_back(std::move(seg));
    }
    segs_ = std::move(folded);
    std::sort(segs_.begin(), segs_.end(), [](const Segment& a, const Segment& b) {
        return window_less(a.window, b.window);
    });
    for (Segment& seg : segs_) pack(seg.terms);
    std::erase_if(segs_, [](const Segment& s) { return s.terms.empty(); });
}

double FunctionExpr::eval(double t) const {
    double value = 0.0;
    for (const Segment& seg : segs_) {
        if (seg.window && !seg.window->contains(t)) continue;
        for (const Monomial& m : seg.terms) value += m.eval(t);
    }
    return value;
}

FunctionExpr FunctionExpr::windowed(const SupportSet& window) const {
    FunctionExpr out;
    for (const Segment& seg : segs_) {
        Segment next = seg;
        next.window = seg.window ? seg.window->intersect(window) : window;
        out.segs_.push_back(std::move(next));
    }
    out.canonicalize();
    return out;
}

std::optional<SupportSet> FunctionExpr::domain() const {
    SupportSet acc;
    for (const Segment& seg : segs_) {
        if (!seg.window) return std::nullopt;
        acc = acc.unite(*seg.window);
    }
    return acc;
}

FunctionExpr FunctionExpr::operator+(const FunctionExpr& other) const {
    FunctionExpr out = *this;
    out += other;
    return out;
}

FunctionExpr& FunctionExpr::operator+=(const FunctionExpr& other) {
    segs_.insert(segs_.end(), other.segs_.begin(), other.segs_.end());
    canonicalize();
    return *this;
}

FunctionExpr FunctionExpr::operator-(const FunctionExpr& other) const {
    return *this + other * -1.0;
}

FunctionExpr FunctionExpr::operator*(const FunctionExpr& other) const {
    FunctionExpr out;
    for (const Segment& sa : segs_) {
        for (const Segment& sb : other.segs_) {
            Segment seg;
            if (sa.window && sb.window) {
                seg.window = sa.window->intersect(*sb.window);
            } else if (sa.window) {
                seg.window = sa.window;
            } else if (sb.window) {
                seg.window = sb.window;
            }
            if (seg.window && seg.window->empty()) continue;
            for (const Monomial& ma : sa.terms) {
                for (const Monomial& mb : sb.terms) {
                    multiply_monomials(ma, mb, seg.terms);
                }
            }
            out.segs_.push_back(std::move(seg));
        }
    }
    out.canonicalize();
    return out;
}

FunctionExpr FunctionExpr::operator*(double scalar) const {
    FunctionExpr out = *this;
    if (scalar == 0.0) return FunctionExpr();
    for (Segment& seg : out.segs_) {
        for (Monomial& m : seg.terms) m.coef *= scalar;
    }
    out.canonicalize();
    return out;
}

std::string FunctionExpr::str() const {
    if (segs_.empty()) return "0";
    std::ostringstream out;
    bool first_seg = true;
    for (const Segment& seg : segs_) {
        if (!first_seg) out << " + ";
        first_seg = false;
        bool first = true;
        out << "(";
        for (const Monomial& m : seg.terms) {
            if (!first) out << " + ";
            first = false;
            out << m.coef;
            if (m.power != 0) out << "*t^" << m.power;
            if (m.trig == Trig::sin) out << "*sin(" << m.omega << " t)";
            if (m.trig == Trig::cos) out << "*cos(" << m.omega << " t)";
        }
        out << ")";
        if (seg.window) out << "*I{" << seg.window->str() << "}";
    }
    return out.str();
}

} // namespace sepkern
