#include "sepkern/relation.hpp"

#include <algorithm>
#include <cmath>

#include "sepkern/errors.hpp"

namespace sepkern {

namespace {

std::vector<KernelTerm> scaled_terms(const std::vector<KernelTerm>& terms, double s) {
    std::vector<KernelTerm> out;
    if (s == 0.0) return out;
    out.reserve(terms.size());
    for (const KernelTerm& t : terms) out.push_back({t.left * s, t.right});
    return out;
}

void append_terms(std::vector<KernelTerm>& dst, const std::vector<KernelTerm>& src, double s) {
    for (const KernelTerm& t : src) {
        if (s != 0.0) dst.push_back({t.left * s, t.right});
    }
}

} // namespace

RelationReport verify_two_sided(const RelationSpec& spec, double tol) {
    if (spec.A.scalar != 0.0 || spec.B.scalar != 0.0) {
        throw error("verify_two_sided: operators must be raw kernels (scalar = 0)");
    }
    if (tol <= 0.0) throw error("verify_two_sided: tolerance must be positive");

    const double h0 = spec.H.at(0);
    const double f0 = spec.F.at(0);

    // kernel parts of H(A) and F(A)
    SeparableOperator ha = polynomial(spec.H, spec.A);
    SeparableOperator fa = polynomial(spec.F, spec.A);
    SeparableOperator ha_plus = ha;
    ha_plus.scalar = 0.0;
    SeparableOperator fa_plus = fa;
    fa_plus.scalar = 0.0;

    // H+(A) B carries its s-domain on G_B, B F+(A) on G_A
    SeparableOperator hb = compose(ha_plus, spec.B);
    SeparableOperator bf = compose(spec.B, fa_plus);

    const SupportSet common = spec.A.support.intersect(spec.B.support);
    const SupportSet a_only = spec.A.support.subtract(common);
    const SupportSet b_only = spec.B.support.subtract(common);

    // scale from the two full products
    SeparableOperator lhs_full = op_add(op_scale(spec.B, h0), hb);
    SeparableOperator rhs_full = op_add(op_scale(spec.B, f0), bf);
    const double scale = std::max({kernel_norm(lhs_full), kernel_norm(rhs_full), 1e-300});

    RelationReport report;
    report.scale = scale;

    // condition 1 on X x G
    if (common.measure() > 0.0) {
        std::vector<KernelTerm> diff = scaled_terms(spec.B.terms, h0 - f0);
        append_terms(diff, hb.terms, 1.0);
        append_terms(diff, bf.terms, -1.0);
        report.residuals[0] = std::sqrt(kernel_norm2(diff, common)) / scale;
    }
    // condition 2 on X x (G_A \ G)
    if (a_only.measure() > 0.0) {
        report.residuals[1] = std::sqrt(kernel_norm2(bf.terms, a_only)) / scale;
    }
    // condition 3 on X x (G_B \ G)
    if (b_only.measure() > 0.0) {
        std::vector<KernelTerm> diff = scaled_terms(spec.B.terms, f0 - h0);
        append_terms(diff, hb.terms, -1.0);
        report.residuals[2] = std::sqrt(kernel_norm2(diff, b_only)) / scale;
    }

    report.holds = true;
    for (int i = 0; i < 3; ++i) {
        if (report.residuals[i] > tol) report.holds = false;
    }
    if (!report.holds) {
        int worst = 0;
        for (int i = 1; i < 3; ++i) {
            if (report.residuals[i] > report.residuals[worst]) worst = i;
        }
        report.worst_condition = worst + 1;
    }

    // independent route: compare H(A) o B and B o F(A) as operators
    report.direct_holds = operators_equal(compose(ha, spec.B), compose(spec.B, fa), tol);
    if (report.direct_holds != report.holds) {
        throw consistency_error(
            "condition-based and direct verdicts disagree; the kernel conditions "
            "should be equivalent to operator equality");
    }
    return report;
}

RelationReport verify_covariance(const PolynomialSpec& f, const SeparableOperator& a,
                                 const SeparableOperator& b, double tol) {
    return verify_two_sided({PolynomialSpec::identity(), f, a, b}, tol);
}

RelationReport verify_reciprocal(const PolynomialSpec& h, const SeparableOperator& a,
                                 const SeparableOperator& b, double tol) {
    return verify_two_sided({h, PolynomialSpec::identity(), a, b}, tol);
}

RelationReport verify_monomial(double delta, int d, const SeparableOperator& a,
                               const SeparableOperator& b, double tol) {
    if (delta == 0.0) throw error("verify_monomial: delta must be nonzero");
    if (d < 1) throw error("verify_monomial: exponent must be positive");
    return verify_two_sided(
        {PolynomialSpec::identity(), PolynomialSpec::monomial(delta, d), a, b}, tol);
}

} // namespace sepkern
