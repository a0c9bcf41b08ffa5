#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "sepkern/operators.hpp"

namespace sepkern {

// Parameters of the windowed trigonometric pairs: kernels are built from
// theta_X[i] * trig(omega t) trig(omega s) on the window [alpha, beta] with
// integration domain [alpha1, beta1]. Slots: 1 sin x cos, 2 cos x cos,
// 3 sin x sin, 4 cos x sin.
struct TrigFamilyParams {
    double theta_A[4] = {0.0, 0.0, 0.0, 0.0};
    double theta_B[4] = {0.0, 0.0, 0.0, 0.0};
    double omega = 1.0;
    double delta = 1.0;
    double alpha = 0.0;
    double beta = M_PI;
    double alpha1 = 0.0;
    double beta1 = M_PI;
};

// Laurent pair: kernels gamma/t (1 - 2 ln2 / s) and gamma/t on the window
// [alpha, inf) with integration domain [1, 2]; needs p > 1.
struct LaurentFamilyParams {
    double gamma_A2 = 1.0;
    double gamma_B2 = 1.0;
    double alpha = 1.0;
};

using FamilyParams = std::variant<TrigFamilyParams, LaurentFamilyParams>;

// sigma1 = int_{a1}^{b1} sin(w s)^2 ds and sigma2 = (b1 - a1) - sigma1, in
// closed form (zero frequency degenerates to sigma1 = 0).
std::pair<double, double> sigma(double omega, double alpha1, double beta1);

// Throws inadmissible_params naming the violated condition. All trig
// families share: delta != 0, alpha <= alpha1 < beta1 <= beta, an integer
// omega (beta1 -+ alpha1)/pi, and sigma1, sigma2 bounded away from zero.
void check_trig_admissible(const TrigFamilyParams& params, const std::string& family);

// Four-slot kernel operator theta[0] sin x cos + theta[1] cos x cos +
// theta[2] sin x sin + theta[3] cos x sin on I_[alpha,beta](t), over
// [alpha1, beta1].
SeparableOperator fourier_operator(const double theta[4], const TrigFamilyParams& geom, double p);

// Closed-form commutator kernel of two four-slot operators (Gram pairings
// reduced with sigma1/sigma2 under the admissibility orthogonality).
SeparableOperator fourier_commutator(const double theta_a[4], const double theta_b[4],
                                     const TrigFamilyParams& geom, double p);

// One operator pair from the catalogue plus its sequence templates.
struct Family {
    std::string name;
    double p = 2.0;
    SeparableOperator A;
    SeparableOperator B;
    // sequence templates: value of the varying coefficient slot -> operator
    std::function<SeparableOperator(double)> a_seq;
    std::function<SeparableOperator(double)> b_seq;
    double a_base = 0.0; // slot value reproducing A / B
    double b_base = 0.0;
    // commutator A B - B A in closed form
    SeparableOperator expected_comm;
    double comm_coef = 0.0;
};

// name in {t4, t5, t6, t7, t8, t9, t10, laurent}
Family make_family(const std::string& name, const FamilyParams& params, double p);

const std::vector<std::string>& family_names();

// Named access to one scalar field of FamilyParams (for parameter scans and
// config files): theta_A1..4, theta_B1..4, omega, delta, alpha, beta,
// alpha1, beta1 / gamma_A2, gamma_B2, alpha.
void set_family_param(FamilyParams& params, const std::string& name, double value);
double get_family_param(const FamilyParams& params, const std::string& name);

} // namespace sepkern
