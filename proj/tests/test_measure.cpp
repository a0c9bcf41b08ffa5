#include <doctest.h>

#include <cmath>

#include "sepkern/errors.hpp"
#include "sepkern/pairing.hpp"
#include "sepkern/quadrature.hpp"
#include "sepkern/rng.hpp"

using namespace sepkern;

namespace {

// independent oracle: brute-force quadrature of the evaluated product
double quad_oracle(const FunctionExpr& u, const FunctionExpr& v, double a, double b) {
    auto f = [&u, &v](double t) { return u.eval(t) * v.eval(t); };
    return integrate_adaptive(f, a, b, {1e-13, 40}).value;
}

FunctionExpr random_trig_power(SplitMix64& rng) {
    FunctionExpr f;
    const int terms = 1 + static_cast<int>(rng.below(3));
    for (int i = 0; i < terms; ++i) {
        Monomial m;
        m.coef = rng.uniform(-2.0, 2.0);
        m.power = static_cast<int>(rng.below(3));
        const int what = static_cast<int>(rng.below(3));
        m.trig = what == 0 ? Trig::none : (what == 1 ? Trig::sin : Trig::cos);
        m.omega = rng.uniform(0.3, 4.0);
        f += FunctionExpr::monomial(m);
    }
    return f;
}

} // namespace

TEST_CASE("pairing: sin x sin over [0, pi]") {
    FunctionExpr s = FunctionExpr::sin_wave(1.0);
    SupportSet dom(0.0, M_PI);
    PairingValue q = pairing(s, s, dom);
    CHECK(q.method == EvalMethod::closed_form);
    CHECK(q.abs_error == 0.0);
    CHECK(q.value == doctest::Approx(M_PI / 2.0).epsilon(1e-14));
    // adaptive-quadrature oracle agrees
    CHECK(q.value == doctest::Approx(quad_oracle(s, s, 0.0, M_PI)).epsilon(1e-12));
}

TEST_CASE("pairing: orthogonality of sin and cos over a full period") {
    PairingValue q = pairing(FunctionExpr::sin_wave(1.0), FunctionExpr::cos_wave(1.0),
                             SupportSet(0.0, 2.0 * M_PI));
    CHECK(std::abs(q.value) < 1e-13);
}

TEST_CASE("pairing: 1/t against 1 over [1, 2] gives log 2") {
    PairingValue q =
        pairing(FunctionExpr::power(-1), FunctionExpr::constant(1.0), SupportSet(1.0, 2.0));
    CHECK(q.method == EvalMethod::closed_form);
    CHECK(q.value == doctest::Approx(std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("pairing falls back to quadrature for trig times negative power") {
    FunctionExpr f = FunctionExpr::monomial({1.0, -1, Trig::sin, 1.0}); // sin(t)/t
    PairingValue q = pairing(f, FunctionExpr::constant(1.0), SupportSet(1.0, 2.0));
    CHECK(q.method == EvalMethod::quadrature);
    CHECK(q.abs_error <= 1e-11);
    auto oracle = [](double t) { return std::sin(t) / t; };
    CHECK(q.value ==
          doctest::Approx(integrate_adaptive(oracle, 1.0, 2.0, {1e-13, 40}).value)
              .epsilon(1e-11));
}

TEST_CASE("pairing rejects non-integrable products") {
    CHECK_THROWS_AS(pairing(FunctionExpr::power(-1), FunctionExpr::constant(1.0),
                            SupportSet(-1.0, 1.0)),
                    non_integrable);
    // trig atom over an unbounded piece
    CHECK_THROWS_AS(pairing(FunctionExpr::sin_wave(1.0), FunctionExpr::constant(1.0),
                            SupportSet::half_line(0.0)),
                    non_integrable);
    // tail exponent above -2
    CHECK_THROWS_AS(pairing(FunctionExpr::power(-1), FunctionExpr::constant(1.0),
                            SupportSet::half_line(1.0)),
                    non_integrable);
}

TEST_CASE("pairing symmetry is exact") {
    SplitMix64 rng(100);
    for (int iter = 0; iter < 50; ++iter) {
        FunctionExpr u = random_trig_power(rng);
        FunctionExpr v = random_trig_power(rng);
        const double a = rng.uniform(-2.0, 1.0);
        SupportSet dom(a, a + rng.uniform(0.5, 3.0));
        CHECK(pairing(u, v, dom).value == pairing(v, u, dom).value);
    }
}

TEST_CASE("pairing is bilinear") {
    SplitMix64 rng(101);
    for (int iter = 0; iter < 50; ++iter) {
        FunctionExpr u = random_trig_power(rng);
        FunctionExpr w = random_trig_power(rng);
        FunctionExpr v = random_trig_power(rng);
        const double alpha = rng.uniform(-2.0, 2.0);
        const double a = rng.uniform(-2.0, 1.0);
        SupportSet dom(a, a + rng.uniform(0.5, 3.0));
        const double lhs = pairing(u * alpha + w, v, dom).value;
        const double rhs = alpha * pairing(u, v, dom).value + pairing(w, v, dom).value;
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("closed form matches quadrature on 100 random pairs") {
    SplitMix64 rng(102);
    for (int iter = 0; iter < 100; ++iter) {
        FunctionExpr u = random_trig_power(rng);
        FunctionExpr v = random_trig_power(rng);
        const double a = rng.uniform(-3.0, 2.0);
        const double b = a + rng.uniform(0.5, 3.0);
        PairingValue q = pairing(u, v, SupportSet(a, b));
        CHECK(q.value == doctest::Approx(quad_oracle(u, v, a, b)).epsilon(1e-10).scale(1.0));
    }
}

TEST_CASE("Hoelder inequality on random expressions") {
    SplitMix64 rng(103);
    const double ps[3] = {1.0, 2.0, kInf};
    for (int iter = 0; iter < 60; ++iter) {
        FunctionExpr u = random_trig_power(rng);
        FunctionExpr v = random_trig_power(rng);
        const double a = rng.uniform(-2.0, 1.0);
        SupportSet dom(a, a + rng.uniform(0.5, 2.5));
        const double p = ps[iter % 3];
        const double q = p == 1.0 ? kInf : (p == 2.0 ? 2.0 : 1.0);
        const double lhs = std::abs(pairing(u, v, dom).value);
        const double rhs = lp_norm(u, dom, p) * lp_norm(v, dom, q);
        CHECK(lhs <= rhs * (1.0 + 1e-9) + 1e-12);
    }
}

TEST_CASE("lp_norm examples") {
    CHECK(lp_norm(FunctionExpr::constant(1.0), SupportSet(0.0, 3.0), 2.0) ==
          doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));
    CHECK(lp_norm(FunctionExpr::sin_wave(1.0), SupportSet(0.0, M_PI), kInf) ==
          doctest::Approx(1.0).epsilon(1e-14));
    // closed tail integral: int_1^inf t^-2 = 1; quadrature oracle on truncations
    const double tail = lp_norm(FunctionExpr::power(-1), SupportSet::half_line(1.0), 2.0);
    CHECK(tail == doctest::Approx(1.0).epsilon(1e-14));
    auto trunc = [](double t) { return 1.0 / (t * t); };
    double approx = 0.0;
    for (double hi : {1e2, 1e4, 1e6}) {
        approx = integrate_adaptive(trunc, 1.0, hi, {1e-13, 40}).value;
    }
    CHECK(tail * tail == doctest::Approx(approx).epsilon(1e-5));
}

TEST_CASE("lp_norm generic exponents and errors") {
    // |sin| over [0, pi]: L1 norm = 2
    CHECK(lp_norm(FunctionExpr::sin_wave(1.0), SupportSet(0.0, M_PI), 1.0) ==
          doctest::Approx(2.0).epsilon(1e-11));
    // L4 of constant 2 on [0, 1] = 2
    CHECK(lp_norm(FunctionExpr::constant(2.0), SupportSet(0.0, 1.0), 4.0) ==
          doctest::Approx(2.0).epsilon(1e-12));
    // p = 3 runs through the numeric branch
    CHECK(lp_norm(FunctionExpr::constant(2.0), SupportSet(0.0, 1.0), 3.0) ==
          doctest::Approx(2.0).epsilon(1e-10));
    CHECK_THROWS_AS(lp_norm(FunctionExpr::sin_wave(1.0), SupportSet::half_line(0.0), 2.0),
                    non_integrable);
    CHECK_THROWS_AS(lp_norm(FunctionExpr::power(-1), SupportSet::half_line(1.0), 1.0),
                    non_integrable);
}

TEST_CASE("ess_sup analysis") {
    // monotone powers take their sup at the endpoints
    CHECK(lp_norm(FunctionExpr::power(2), SupportSet(-2.0, 1.0), kInf) ==
          doctest::Approx(4.0));
    CHECK(lp_norm(FunctionExpr::power(-1), SupportSet::half_line(0.5), kInf) ==
          doctest::Approx(2.0));
    // trig without a peak inside the window
    CHECK(lp_norm(FunctionExpr::sin_wave(1.0), SupportSet(0.0, 0.5), kInf) ==
          doctest::Approx(std::sin(0.5)));
    // mixed expression through the grid path
    FunctionExpr mix = FunctionExpr::constant(0.25) + FunctionExpr::sin_wave(2.0);
    CHECK(lp_norm(mix, SupportSet(0.0, 10.0), kInf) == doctest::Approx(1.25).epsilon(1e-9));
}

TEST_CASE("functional equality: identical data") {
    FunctionExpr s = FunctionExpr::sin_wave(1.0);
    SupportSet dom(0.0, M_PI);
    EqualityVerdict v = check_functional_equality(s, s, dom, dom);
    CHECK(v.equal);
}

TEST_CASE("functional equality: window mismatch is caught with its witness") {
    FunctionExpr s = FunctionExpr::sin_wave(1.0);
    EqualityVerdict v = check_functional_equality(s, s, SupportSet(0.0, 2.0 * M_PI),
                                                  SupportSet(0.0, M_PI));
    CHECK(!v.equal);
    CHECK(v.witness == "G1\\G");
    CHECK(v.residual == doctest::Approx(std::sqrt(M_PI / 2.0)).epsilon(1e-12));
}

TEST_CASE("functional equality: both vanish") {
    FunctionExpr zero;
    FunctionExpr tmt = FunctionExpr::power(1) - FunctionExpr::power(1);
    EqualityVerdict v =
        check_functional_equality(zero, tmt, SupportSet(0.0, 1.0), SupportSet(2.0, 3.0));
    CHECK(v.equal);
}
