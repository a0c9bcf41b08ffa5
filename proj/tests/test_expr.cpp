#include <doctest.h>

#include <cmath>

#include "sepkern/expr.hpp"
#include "sepkern/rng.hpp"

using namespace sepkern;

namespace {

FunctionExpr random_expr(SplitMix64& rng, bool allow_negative_power = false) {
    FunctionExpr f;
    const int terms = 1 + static_cast<int>(rng.below(3));
    for (int i = 0; i < terms; ++i) {
        Monomial m;
        m.coef = rng.uniform(-2.0, 2.0);
        m.power = static_cast<int>(rng.below(4)) - (allow_negative_power ? 1 : 0);
        const int what = static_cast<int>(rng.below(3));
        m.trig = what == 0 ? Trig::none : (what == 1 ? Trig::sin : Trig::cos);
        m.omega = rng.uniform(0.3, 3.0);
        f += FunctionExpr::monomial(m);
    }
    return f;
}

} // namespace

TEST_CASE("product-to-sum keeps pointwise values") {
    SplitMix64 rng(7);
    for (int iter = 0; iter < 100; ++iter) {
        FunctionExpr a = random_expr(rng);
        FunctionExpr b = random_expr(rng);
        FunctionExpr ab = a * b;
        for (int j = 0; j < 10; ++j) {
            const double t = rng.uniform(-3.0, 3.0);
            CHECK(ab.eval(t) == doctest::Approx(a.eval(t) * b.eval(t)).epsilon(1e-11));
        }
    }
}

TEST_CASE("addition and scaling are pointwise") {
    SplitMix64 rng(8);
    for (int iter = 0; iter < 50; ++iter) {
        FunctionExpr a = random_expr(rng);
        FunctionExpr b = random_expr(rng);
        const double s = rng.uniform(-3.0, 3.0);
        FunctionExpr sum = a + b * s;
        for (int j = 0; j < 6; ++j) {
            const double t = rng.uniform(-3.0, 3.0);
            CHECK(sum.eval(t) == doctest::Approx(a.eval(t) + s * b.eval(t)).epsilon(1e-11));
        }
    }
}

TEST_CASE("windows act as indicator factors") {
    FunctionExpr f = FunctionExpr::constant(2.0).windowed(SupportSet(0.0, 1.0));
    CHECK(f.eval(0.5) == 2.0);
    CHECK(f.eval(1.5) == 0.0);

    FunctionExpr g = f.windowed(SupportSet(0.5, 3.0));
    CHECK(g.eval(0.75) == 2.0);
    CHECK(g.eval(0.25) == 0.0);

    // window product intersects
    FunctionExpr h = f * FunctionExpr::constant(1.0).windowed(SupportSet(-1.0, 0.25));
    CHECK(h.eval(0.1) == 2.0);
    CHECK(h.eval(0.5) == 0.0);
}

TEST_CASE("exact cancellation removes terms structurally") {
    SplitMix64 rng(9);
    FunctionExpr a = random_expr(rng).windowed(SupportSet(0.0, 2.0));
    FunctionExpr diff = a - a;
    CHECK(diff.structurally_zero());

    FunctionExpr sum = a + a * -1.0;
    CHECK(sum.structurally_zero());
}

TEST_CASE("sin and cos normalisation") {
    // sin(-w t) = -sin(w t), cos(-w t) = cos(w t), sin(0 t) = 0
    FunctionExpr s = FunctionExpr::sin_wave(-2.0, 1.0);
    CHECK(s.eval(0.7) == doctest::Approx(std::sin(-2.0 * 0.7)));
    FunctionExpr c = FunctionExpr::cos_wave(-2.0, 1.0);
    CHECK(c.eval(0.7) == doctest::Approx(std::cos(2.0 * 0.7)));
    CHECK(FunctionExpr::sin_wave(0.0).structurally_zero());
    CHECK(FunctionExpr::cos_wave(0.0).eval(5.0) == 1.0);

    // sin^2 + cos^2 = 1 via product-to-sum
    FunctionExpr s2 = FunctionExpr::sin_wave(1.3) * FunctionExpr::sin_wave(1.3);
    FunctionExpr c2 = FunctionExpr::cos_wave(1.3) * FunctionExpr::cos_wave(1.3);
    FunctionExpr one = s2 + c2;
    CHECK(one.eval(0.3) == doctest::Approx(1.0));
    CHECK(one.eval(-2.1) == doctest::Approx(1.0));
}
