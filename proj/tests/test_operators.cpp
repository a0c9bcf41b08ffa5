#include <doctest.h>

#include <cmath>

#include "sepkern/errors.hpp"
#include "sepkern/operators.hpp"
#include "sepkern/quadrature.hpp"
#include "test_helpers.hpp"

using namespace sepkern;
using namespace sepkern::testing;

namespace {

SeparableOperator rank_one(const FunctionExpr& left, const FunctionExpr& right,
                           const SupportSet& support, double p = 2.0) {
    return make_operator({{left, right}}, support, p);
}

double rel_residual(const SeparableOperator& a, const SeparableOperator& b) {
    const double scale = std::max({kernel_norm(a), kernel_norm(b), 1e-300});
    return operator_residual(a, b) / scale;
}

} // namespace

TEST_CASE("apply: rank-1 projection of cos onto sin") {
    SupportSet dom(0.0, M_PI);
    SeparableOperator a =
        rank_one(FunctionExpr::sin_wave(1.0).windowed(dom), FunctionExpr::cos_wave(1.0), dom);
    FunctionExpr out = apply(a, FunctionExpr::cos_wave(1.0));
    // int_0^pi cos^2 = pi/2 (quadrature oracle)
    auto cos2 = [](double t) { return std::cos(t) * std::cos(t); };
    const double q = integrate_adaptive(cos2, 0.0, M_PI, {1e-13, 40}).value;
    CHECK(q == doctest::Approx(M_PI / 2.0).epsilon(1e-12));
    CHECK(out.eval(1.0) == doctest::Approx(q * std::sin(1.0)).epsilon(1e-12));
    CHECK(out.eval(4.0) == 0.0); // window cuts off past pi
}

TEST_CASE("apply: zero input and orthogonal input") {
    SplitMix64 rng(300);
    SeparableOperator a = random_operator(rng, 3);
    CHECK(apply(a, FunctionExpr::zero()).structurally_zero());

    SupportSet dom(0.0, M_PI);
    SeparableOperator t4 =
        rank_one(FunctionExpr::sin_wave(1.0).windowed(dom), FunctionExpr::cos_wave(1.0), dom);
    FunctionExpr out = apply(t4, FunctionExpr::sin_wave(1.0));
    CHECK(lp_norm(out, 2.0) < 1e-13);
}

TEST_CASE("compose: orthogonal inner pair gives the zero operator") {
    SupportSet dom(0.0, M_PI);
    SeparableOperator a =
        rank_one(FunctionExpr::sin_wave(1.0).windowed(dom), FunctionExpr::cos_wave(1.0), dom);
    SeparableOperator b =
        rank_one(FunctionExpr::sin_wave(1.0).windowed(dom), FunctionExpr::sin_wave(1.0), dom);
    // inner pairing Q(sin, cos) over [0, pi] vanishes
    SeparableOperator ab = compose(a, b);
    CHECK(ab.terms.empty());
    CHECK(is_zero_operator(ab));
}

TEST_CASE("compose: the unit box kernel is idempotent") {
    SupportSet dom(0.0, 1.0);
    SeparableOperator a = rank_one(FunctionExpr::constant(1.0).windowed(dom),
                                   FunctionExpr::constant(1.0), dom);
    SeparableOperator a2 = compose(a, a);
    CHECK(rel_residual(a2, a) < 1e-14);
}

TEST_CASE("compose distributes identity parts") {
    SplitMix64 rng(301);
    auto [a, b] = random_operator_pair(rng, 2);
    SeparableOperator a_shift = a;
    a_shift.scalar = 0.75;
    SeparableOperator lhs = compose(a_shift, b);
    // (0.75 I + A) B = 0.75 B + A B
    SeparableOperator rhs = op_add(op_scale(b, 0.75), compose(a, b));
    CHECK(lhs.scalar == 0.0);
    CHECK(rel_residual(lhs, rhs) < 1e-12);
}

TEST_CASE("power: m = 1 returns the operator, rank-1 powers telescope") {
    SplitMix64 rng(302);
    SeparableOperator a = random_operator(rng, 3);
    CHECK(rel_residual(power(a, 1), a) == 0.0);

    SupportSet dom(0.0, 1.0);
    FunctionExpr left = FunctionExpr::power(1).windowed(dom);
    FunctionExpr right = FunctionExpr::constant(1.0) + FunctionExpr::power(2);
    SeparableOperator r1 = rank_one(left, right, dom);
    const double q = pairing(left, right.windowed(dom)).value;
    for (int m = 2; m <= 5; ++m) {
        SeparableOperator pm = power(r1, m);
        SeparableOperator expected = op_scale(r1, std::pow(q, m - 1));
        CHECK(rel_residual(pm, expected) < 1e-13);
    }
}

TEST_CASE("power agrees with repeated composition") {
    SplitMix64 rng(303);
    for (int iter = 0; iter < 10; ++iter) {
        SeparableOperator a = random_operator(rng, 3);
        SeparableOperator chain = a;
        for (int m = 2; m <= 4; ++m) {
            chain = compose(chain, a);
            CHECK(rel_residual(power(a, m), chain) < 1e-9);
        }
    }
}

TEST_CASE("polynomial: identity, square of a rank-1, additivity") {
    SplitMix64 rng(304);
    SeparableOperator a = random_operator(rng, 3);
    CHECK(rel_residual(polynomial(PolynomialSpec::identity(), a), a) == 0.0);

    SupportSet dom(0.0, 1.0);
    SeparableOperator r1 = rank_one(FunctionExpr::constant(1.0).windowed(dom),
                                    FunctionExpr::power(1), dom);
    const double q = 0.5; // int_0^1 t dt
    SeparableOperator sq = polynomial(PolynomialSpec({0.0, 0.0, 1.0}), r1);
    CHECK(rel_residual(sq, op_scale(r1, q)) < 1e-14);

    PolynomialSpec f({0.3, -1.0, 0.25});
    PolynomialSpec g({0.0, 2.0, 0.0, 0.5});
    SeparableOperator sum = polynomial(f + g, a);
    SeparableOperator parts = op_add(polynomial(f, a), polynomial(g, a));
    CHECK(sum.scalar == parts.scalar);
    CHECK(rel_residual(sum, parts) < 1e-12);
}

TEST_CASE("commutator: self-commutator vanishes, antisymmetry is exact") {
    SplitMix64 rng(305);
    for (int iter = 0; iter < 8; ++iter) {
        auto [a, b] = random_operator_pair(rng, 3);
        CHECK(is_zero_operator(commutator(a, a), 1e-12));
        SeparableOperator sum = op_add(commutator(a, b), commutator(b, a));
        CHECK(sum.terms.empty()); // exact structural cancellation
    }
}

TEST_CASE("commutator requires a common support") {
    SplitMix64 rng(306);
    SeparableOperator a = random_operator(rng, 2);
    SeparableOperator b = a;
    b.support = SupportSet(-5.0, -4.0);
    CHECK_THROWS_AS(commutator(a, b), support_mismatch);
}

TEST_CASE("compose is associative") {
    SplitMix64 rng(307);
    for (int iter = 0; iter < 8; ++iter) {
        auto [a, b] = random_operator_pair(rng, 3);
        auto [c, unused] = random_operator_pair(rng, 3);
        SeparableOperator left = compose(compose(a, b), c);
        SeparableOperator right = compose(a, compose(b, c));
        CHECK(rel_residual(left, right) < 1e-9);
    }
}

TEST_CASE("adjoint: transpose, involution") {
    SupportSet dom(0.0, M_PI);
    SeparableOperator a =
        rank_one(FunctionExpr::sin_wave(1.0).windowed(dom), FunctionExpr::cos_wave(1.0), dom);
    SeparableOperator at = adjoint(a);
    // kernel swaps: left cos, right sin
    FunctionExpr out = apply(at, FunctionExpr::sin_wave(1.0));
    CHECK(out.eval(1.0) == doctest::Approx((M_PI / 2.0) * std::cos(1.0)).epsilon(1e-12));
    SeparableOperator back = adjoint(at);
    CHECK(rel_residual(back, a) == 0.0);
    CHECK(back.p == a.p);
}

TEST_CASE("adjoint duality <Ax, y> = <x, A*y> at p = 2") {
    SplitMix64 rng(308);
    for (int iter = 0; iter < 10; ++iter) {
        SeparableOperator a = random_operator(rng, 3);
        SeparableOperator at = adjoint(a);
        for (int probe = 0; probe < 5; ++probe) {
            const Interval hull = a.support.hull();
            SupportSet box(hull.lo - 0.5, hull.hi + 0.5);
            FunctionExpr x = random_factor(rng, 1.0, 3).windowed(box);
            FunctionExpr y = random_factor(rng, 1.0, 3).windowed(box);
            const double lhs = pairing(apply(a, x), y).value;
            const double rhs = pairing(x, apply(at, y)).value;
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10).scale(1.0));
        }
    }
}

TEST_CASE("adjoint reverses products") {
    SplitMix64 rng(309);
    for (int iter = 0; iter < 6; ++iter) {
        auto [a, b] = random_operator_pair(rng, 2);
        SeparableOperator lhs = adjoint(compose(a, b));
        SeparableOperator rhs = compose(adjoint(b), adjoint(a));
        CHECK(rel_residual(lhs, rhs) < 1e-10);
    }
}

TEST_CASE("merge keeps the rank bounded under repeated composition") {
    SplitMix64 rng(310);
    SeparableOperator a = random_operator(rng, 4);
    SeparableOperator acc = a;
    for (int i = 0; i < 6; ++i) acc = compose(acc, a);
    CHECK(acc.rank() <= a.rank());
}

TEST_CASE("operator equality is scale aware") {
    SplitMix64 rng(311);
    SeparableOperator a = random_operator(rng, 3);
    SeparableOperator b = op_scale(a, 1.0 + 1e-12);
    CHECK(operators_equal(a, b, 1e-9));
    SeparableOperator c = op_scale(a, 1.02);
    CHECK(!operators_equal(a, c, 1e-9));
}
