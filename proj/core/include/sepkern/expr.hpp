#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sepkern/support.hpp"

namespace sepkern {

enum class Trig : std::uint8_t { none, sin, cos };

// coef * t^power * trig(omega t). Products of atoms stay in this form:
// trig*trig is rewritten by product-to-sum, powers add. omega > 0 after
// normalisation (cos is even, sin odd, omega = 0 collapses).
struct Monomial {
    double coef = 0.0;
    int power = 0;
    Trig trig = Trig::none;
    double omega = 0.0;

    double eval(double t) const;
};

// A sum of monomials carried on an optional indicator window. A window of
// nullopt means the whole real line.
struct Segment {
    std::optional<SupportSet> window;
    std::vector<Monomial> terms;
};

// Closed symbolic function on R: a sum of windowed monomial blocks. Closed
// under addition, scalar multiple and pointwise product (windows intersect).
class FunctionExpr {
public:
    FunctionExpr() = default;

    static FunctionExpr zero() { return FunctionExpr(); }
    static FunctionExpr constant(double c);
    static FunctionExpr power(int k, double coef = 1.0);
    static FunctionExpr sin_wave(double omega, double coef = 1.0);
    static FunctionExpr cos_wave(double omega, double coef = 1.0);
    static FunctionExpr monomial(const Monomial& m);

    const std::vector<Segment>& segments() const { return segs_; }
    bool structurally_zero() const { return segs_.empty(); }

    double eval(double t) const;

    // Restrict by an extra indicator factor.
    FunctionExpr windowed(const SupportSet& window) const;

    // Union of segment windows; nullopt if any segment is unwindowed.
    std::optional<SupportSet> domain() const;

    FunctionExpr operator+(const FunctionExpr& other) const;
    FunctionExpr operator-(const FunctionExpr& other) const;
    FunctionExpr operator*(const FunctionExpr& other) const;
    FunctionExpr operator*(double scalar) const;
    FunctionExpr operator-() const { return *this * -1.0; }
    FunctionExpr& operator+=(const FunctionExpr& other);

    std::string str() const;

private:
    void canonicalize();

    std::vector<Segment> segs_;
};

inline FunctionExpr operator*(double scalar, const FunctionExpr& f) { return f * scalar; }

// Product of two monomials as a sum (product-to-sum may split a trig pair
// into two monomials).
void multiply_monomials(const Monomial& a, const Monomial& b, std::vector<Monomial>& out);

} // namespace sepkern
