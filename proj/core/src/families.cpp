#include "sepkern/families.hpp"

#include <array>
#include <cmath>

#include "sepkern/errors.hpp"
#include "sepkern/pairing.hpp"

namespace sepkern {

namespace {

constexpr double kLn2 = 0.6931471805599453;

bool near_integer(double x, double tol = 1e-9) {
    return std::abs(x - std::round(x)) <= tol;
}

KernelTerm trig_term(double coef, Trig lt, Trig rt, const TrigFamilyParams& geom) {
    const SupportSet window(geom.alpha, geom.beta);
    FunctionExpr left = (lt == Trig::sin ? FunctionExpr::sin_wave(geom.omega, coef)
                                         : FunctionExpr::cos_wave(geom.omega, coef))
                            .windowed(window);
    FunctionExpr right = rt == Trig::sin ? FunctionExpr::sin_wave(geom.omega)
                                         : FunctionExpr::cos_wave(geom.omega);
    return {left, right};
}

} // namespace

std::pair<double, double> sigma(double omega, double alpha1, double beta1) {
    if (!(alpha1 < beta1)) throw error("sigma: alpha1 < beta1 required");
    const double len = beta1 - alpha1;
    if (omega == 0.0) return {0.0, len};
    const double s1 = 0.5 * len -
                      std::cos(omega * (alpha1 + beta1)) * std::sin(omega * (beta1 - alpha1)) /
                          (2.0 * omega);
    return {s1, len - s1};
}

void check_trig_admissible(const TrigFamilyParams& params, const std::string& family) {
    auto fail = [&family](const std::string& what) {
        throw inadmissible_params(family + ": " + what);
    };
    if (params.delta == 0.0) fail("delta must be nonzero");
    if (!(params.alpha1 < params.beta1)) fail("alpha1 < beta1 required");
    if (!(params.alpha <= params.alpha1)) fail("alpha <= alpha1 required");
    if (!(params.beta >= params.beta1)) fail("beta >= beta1 required");
    const double diff = params.omega * (params.beta1 - params.alpha1) / M_PI;
    const double sum = params.omega * (params.beta1 + params.alpha1) / M_PI;
    if (!near_integer(diff) && !near_integer(sum)) {
        fail("omega (beta1 -+ alpha1)/pi must be an integer");
    }
    const auto [s1, s2] = sigma(params.omega, params.alpha1, params.beta1);
    const double floor = 1e-12 * (params.beta1 - params.alpha1);
    if (std::abs(s1) <= floor) fail("sigma1 vanishes");
    if (std::abs(s2) <= floor) fail("sigma2 vanishes");
    // orthogonality consequence of the integer condition
    const SupportSet dom(params.alpha1, params.beta1);
    const double cross = pairing(FunctionExpr::sin_wave(params.omega),
                                 FunctionExpr::cos_wave(params.omega), dom)
                             .value;
    if (std::abs(cross) > 1e-12 * (params.beta1 - params.alpha1)) {
        fail("sin(omega s) and cos(omega s) are not orthogonal on [alpha1, beta1]");
    }
}

SeparableOperator fourier_operator(const double theta[4], const TrigFamilyParams& geom,
                                   double p) {
    const Trig slots[4][2] = {{Trig::sin, Trig::cos},
                              {Trig::cos, Trig::cos},
                              {Trig::sin, Trig::sin},
                              {Trig::cos, Trig::sin}};
    std::vector<KernelTerm> terms;
    for (int i = 0; i < 4; ++i) {
        if (theta[i] != 0.0) {
            terms.push_back(trig_term(theta[i], slots[i][0], slots[i][1], geom));
        }
    }
    return make_operator(std::move(terms), SupportSet(geom.alpha1, geom.beta1), p);
}

SeparableOperator fourier_commutator(const double a[4], const double b[4],
                                     const TrigFamilyParams& geom, double p) {
    const auto [s1, s2] = sigma(geom.omega, geom.alpha1, geom.beta1);
    // Gram pairings over [alpha1, beta1] collapse to sigma1/sigma2 under the
    // admissibility orthogonality; the commutator kernel follows slot-wise.
    double theta[4];
    theta[0] = (a[2] * b[0] - b[2] * a[0]) * s1 + (a[0] * b[1] - b[0] * a[1]) * s2;
    theta[1] = (a[3] * b[0] - a[0] * b[3]) * s1;
    theta[2] = (a[0] * b[3] - b[0] * a[3]) * s2;
    theta[3] = (a[3] * b[2] - b[3] * a[2]) * s1 + (a[1] * b[3] - b[1] * a[3]) * s2;
    return fourier_operator(theta, geom, p);
}

namespace {

Family make_trig_family(const std::string& name, const TrigFamilyParams& params, double p) {
    check_trig_admissible(params, name);
    const auto [s1, s2] = sigma(params.omega, params.alpha1, params.beta1);
    const double d = params.delta;
    const double a1 = params.theta_A[0];
    const double a2 = params.theta_A[1];
    const double a4 = params.theta_A[3];
    const double b1 = params.theta_B[0];
    const double b2 = params.theta_B[1];
    const double b3 = params.theta_B[2];

    Family fam;
    fam.name = name;
    fam.p = p;

    using Thetas = std::array<double, 4>;
    auto op = [&params, p](const Thetas& theta) {
        return fourier_operator(theta.data(), params, p);
    };

    Thetas ta{}, tb{};
    std::function<Thetas(double)> ta_of, tb_of;

    if (name == "t4") {
        ta_of = [](double v) { return Thetas{v, 0.0, 0.0, 0.0}; };
        tb_of = [b1](double v) { return Thetas{b1, 0.0, v, 0.0}; };
        ta = ta_of(a1);
        tb = tb_of(b3);
        fam.a_base = a1;
        fam.b_base = b3;
        fam.comm_coef = -s1 * a1 * b3;
    } else if (name == "t5") {
        if (a1 == 0.0) throw inadmissible_params("t5: theta_A1 must be nonzero");
        const double kappa = (d * s2 * a2 - 1.0) / (d * a1 * s1);
        ta_of = [a1, d, s1 = s1](double v) {
            return Thetas{a1, v, 1.0 / (d * s1), 0.0};
        };
        tb_of = [kappa](double v) { return Thetas{v, 0.0, -v * kappa, 0.0}; };
        ta = ta_of(a2);
        tb = tb_of(b1);
        fam.a_base = a2;
        fam.b_base = b1;
        fam.comm_coef = 0.0;
    } else if (name == "t6") {
        ta = Thetas{a1, -1.0 / (d * s2), 1.0 / (d * s1), 0.0};
        tb_of = [b3](double v) { return Thetas{v, 0.0, b3, 0.0}; };
        tb = tb_of(b1);
        fam.b_base = b1;
        fam.comm_coef = 2.0 * b1 / d - a1 * b3 * s1;
    } else if (name == "t7") {
        ta_of = [d, s1 = s1, s2 = s2](double v) {
            return Thetas{v, 1.0 / (d * s2), 1.0 / (d * s1), 0.0};
        };
        tb_of = [b1, s1 = s1, s2 = s2](double v) {
            return Thetas{b1, 2.0 * s1 * v / s2, v, 0.0};
        };
        ta = ta_of(a1);
        tb = tb_of(b3);
        fam.a_base = a1;
        fam.b_base = b3;
        fam.comm_coef = a1 * s1 * b3;
    } else if (name == "t8") {
        ta_of = [a1, d, s1 = s1, s2 = s2](double v) {
            return Thetas{a1, v, d * v * v * s2 * s2 / s1, 0.0};
        };
        tb_of = [](double v) { return Thetas{v, 0.0, 0.0, 0.0}; };
        ta = ta_of(a2);
        tb = tb_of(b1);
        fam.a_base = a2;
        fam.b_base = b1;
        fam.comm_coef = a2 * s2 * b1 * (d * a2 * s2 - 1.0);
    } else if (name == "t9") {
        ta_of = [d, s1 = s1, s2 = s2](double v) {
            return Thetas{0.0, 1.0 / (d * s2), 1.0 / (d * s1), v};
        };
        tb_of = [s1 = s1, s2 = s2](double v) {
            return Thetas{0.0, v, 2.0 * s2 * v / s1, 0.0};
        };
        ta = ta_of(a4);
        tb = tb_of(b2);
        fam.a_base = a4;
        fam.b_base = b2;
        fam.comm_coef = a4 * s2 * b2;
    } else if (name == "t10") {
        ta_of = [d, s1 = s1, s2 = s2](double v) {
            return Thetas{0.0, 1.0 / (d * s2), -1.0 / (d * s1), v};
        };
        tb_of = [](double v) { return Thetas{0.0, v, 0.0, 0.0}; };
        ta = ta_of(a4);
        tb = tb_of(b2);
        fam.a_base = a4;
        fam.b_base = b2;
        fam.comm_coef = -a4 * s2 * b2;
    } else {
        throw error("unknown trig family: " + name);
    }

    fam.A = op(ta);
    fam.B = op(tb);
    if (ta_of) fam.a_seq = [ta_of, op](double v) { return op(ta_of(v)); };
    if (tb_of) fam.b_seq = [tb_of, op](double v) { return op(tb_of(v)); };
    fam.expected_comm = fourier_commutator(ta.data(), tb.data(), params, p);
    return fam;
}

Family make_laurent_family(const LaurentFamilyParams& params, double p) {
    if (!(params.alpha > 0.0 && params.alpha <= 1.0)) {
        throw inadmissible_params("laurent: alpha must lie in (0, 1]");
    }
    if (!(p > 1.0)) {
        throw inadmissible_params("laurent: 1/t is not in L_1, p > 1 required");
    }
    const SupportSet window = SupportSet::half_line(params.alpha);
    const SupportSet support(1.0, 2.0);

    auto make_a = [&](double gamma) {
        std::vector<KernelTerm> terms;
        if (gamma != 0.0) {
            FunctionExpr left = FunctionExpr::power(-1, gamma).windowed(window);
            FunctionExpr right =
                FunctionExpr::constant(1.0) + FunctionExpr::power(-1, -2.0 * kLn2);
            terms.push_back({left, right});
        }
        return make_operator(std::move(terms), support, p);
    };

    Family fam;
    fam.name = "laurent";
    fam.p = p;
    fam.A = make_a(params.gamma_A2);
    fam.a_seq = make_a;
    fam.a_base = params.gamma_A2;

    std::vector<KernelTerm> b_terms;
    if (params.gamma_B2 != 0.0) {
        b_terms.push_back({FunctionExpr::power(-1, params.gamma_B2).windowed(window),
                           FunctionExpr::constant(1.0)});
    }
    fam.B = make_operator(std::move(b_terms), support, p);
    fam.b_base = params.gamma_B2;

    fam.comm_coef = -params.gamma_A2 * params.gamma_B2 * kLn2;
    std::vector<KernelTerm> comm_terms;
    if (fam.comm_coef != 0.0) {
        comm_terms.push_back(
            {FunctionExpr::power(-1, fam.comm_coef).windowed(window),
             FunctionExpr::constant(1.0) + FunctionExpr::power(-1, -2.0 * kLn2)});
    }
    fam.expected_comm = make_operator(std::move(comm_terms), support, p);
    return fam;
}

} // namespace

Family make_family(const std::string& name, const FamilyParams& params, double p) {
    if (name == "laurent") {
        const auto* lp = std::get_if<LaurentFamilyParams>(&params);
        if (!lp) throw error("laurent family needs Laurent parameters");
        return make_laurent_family(*lp, p);
    }
    const auto* tp = std::get_if<TrigFamilyParams>(&params);
    if (!tp) throw error(name + " needs trigonometric parameters");
    return make_trig_family(name, *tp, p);
}

const std::vector<std::string>& family_names() {
    static const std::vector<std::string> names = {"t4", "t5",  "t6",  "t7",
                                                   "t8", "t9", "t10", "laurent"};
    return names;
}

void set_family_param(FamilyParams& params, const std::string& name, double value) {
    if (auto* tp = std::get_if<TrigFamilyParams>(&params)) {
        if (name == "theta_A1") tp->theta_A[0] = value;
        else if (name == "theta_A2") tp->theta_A[1] = value;
        else if (name == "theta_A3") tp->theta_A[2] = value;
        else if (name == "theta_A4") tp->theta_A[3] = value;
        else if (name == "theta_B1") tp->theta_B[0] = value;
        else if (name == "theta_B2") tp->theta_B[1] = value;
        else if (name == "theta_B3") tp->theta_B[2] = value;
        else if (name == "theta_B4") tp->theta_B[3] = value;
        else if (name == "omega") tp->omega = value;
        else if (name == "delta") tp->delta = value;
        else if (name == "alpha") tp->alpha = value;
        else if (name == "beta") tp->beta = value;
        else if (name == "alpha1") tp->alpha1 = value;
        else if (name == "beta1") tp->beta1 = value;
        else throw error("unknown trig family parameter: " + name);
        return;
    }
    auto& lp = std::get<LaurentFamilyParams>(params);
    if (name == "gamma_A2") lp.gamma_A2 = value;
    else if (name == "gamma_B2") lp.gamma_B2 = value;
    else if (name == "alpha") lp.alpha = value;
    else throw error("unknown Laurent family parameter: " + name);
}

double get_family_param(const FamilyParams& params, const std::string& name) {
    if (const auto* tp = std::get_if<TrigFamilyParams>(&params)) {
        if (name == "theta_A1") return tp->theta_A[0];
        if (name == "theta_A2") return tp->theta_A[1];
        if (name == "theta_A3") return tp->theta_A[2];
        if (name == "theta_A4") return tp->theta_A[3];
        if (name == "theta_B1") return tp->theta_B[0];
        if (name == "theta_B2") return tp->theta_B[1];
        if (name == "theta_B3") return tp->theta_B[2];
        if (name == "theta_B4") return tp->theta_B[3];
        if (name == "omega") return tp->omega;
        if (name == "delta") return tp->delta;
        if (name == "alpha") return tp->alpha;
        if (name == "beta") return tp->beta;
        if (name == "alpha1") return tp->alpha1;
        if (name == "beta1") return tp->beta1;
        throw error("unknown trig family parameter: " + name);
    }
    const auto& lp = std::get<LaurentFamilyParams>(params);
    if (name == "gamma_A2") return lp.gamma_A2;
    if (name == "gamma_B2") return lp.gamma_B2;
    if (name == "alpha") return lp.alpha;
    throw error("unknown Laurent family parameter: " + name);
}

} // namespace sepkern
