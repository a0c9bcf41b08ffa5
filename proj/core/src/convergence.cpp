#include "sepkern/convergence.hpp"

#include <cmath>

#include "sepkern/errors.hpp"
#include "sepkern/norm_bounds.hpp"
#include "sepkern/rng.hpp"

namespace sepkern {

double SeqRule::value(int n) const {
    switch (kind) {
        case SeqKind::constant: return c;
        case SeqKind::inv_n: return c / n;
        case SeqKind::inv_n2: return c / (static_cast<double>(n) * n);
        case SeqKind::affine_inv_n: return c + c2 / n;
    }
    return c;
}

double SeqRule::limit() const {
    switch (kind) {
        case SeqKind::constant: return c;
        case SeqKind::inv_n: return 0.0;
        case SeqKind::inv_n2: return 0.0;
        case SeqKind::affine_inv_n: return c;
    }
    return c;
}

SeqKind seq_kind_from_string(const std::string& name) {
    if (name == "constant") return SeqKind::constant;
    if (name == "inv_n") return SeqKind::inv_n;
    if (name == "inv_n2") return SeqKind::inv_n2;
    if (name == "affine_inv_n") return SeqKind::affine_inv_n;
    throw error("unknown sequence kind: " + name);
}

std::string seq_kind_to_string(SeqKind kind) {
    switch (kind) {
        case SeqKind::constant: return "constant";
        case SeqKind::inv_n: return "inv_n";
        case SeqKind::inv_n2: return "inv_n2";
        case SeqKind::affine_inv_n: return "affine_inv_n";
    }
    return "constant";
}

ConvergenceTrace run_sequence(const SequenceSpec& spec) {
    if (spec.n_max < 1) throw error("run_sequence: n_max must be >= 1");
    Family fam = make_family(spec.family, spec.params, spec.p);
    if (spec.theta_seq && !fam.a_seq) {
        throw inadmissible_params(fam.name + " has no A_n sequence");
    }
    if (spec.sigma_seq && !fam.b_seq) {
        throw inadmissible_params(fam.name + " has no B_n sequence");
    }

    const SeparableOperator a_limit =
        spec.theta_seq ? fam.a_seq(spec.theta_seq->limit()) : fam.A;
    const SeparableOperator b_limit =
        spec.sigma_seq ? fam.b_seq(spec.sigma_seq->limit()) : fam.B;

    ConvergenceTrace trace;
    for (int n = 1; n <= spec.n_max; ++n) {
        const SeparableOperator a_n =
            spec.theta_seq ? fam.a_seq(spec.theta_seq->value(n)) : fam.A;
        const SeparableOperator b_n =
            spec.sigma_seq ? fam.b_seq(spec.sigma_seq->value(n)) : fam.B;

        TraceRow row;
        row.n = n;
        if (spec.theta_seq) row.bound_diff += box_bound(op_sub(a_n, a_limit), spec.p);
        if (spec.sigma_seq) row.bound_diff += box_bound(op_sub(b_n, b_limit), spec.p);

        const SeparableOperator comm = commutator(a_n, b_n);
        row.bound_comm = box_bound(comm, spec.p);
        const std::uint64_t row_seed = SplitMix64::indexed(spec.seed, static_cast<std::uint64_t>(n)).next();
        row.empirical_comm =
            comm.terms.empty() ? 0.0 : empirical_norm(comm, spec.p, spec.probes, row_seed);
        trace.rows.push_back(row);
    }

    // log-log slope of the bound sequence
    if (trace.rows.size() >= 2) {
        double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
        int count = 0;
        for (const TraceRow& row : trace.rows) {
            if (row.bound_comm <= 0.0) continue;
            const double x = std::log(static_cast<double>(row.n));
            const double y = std::log(row.bound_comm);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
            ++count;
        }
        if (count >= 2) {
            const double denom = count * sxx - sx * sx;
            if (denom > 0.0) trace.slope = (count * sxy - sx * sy) / denom;
        }
    }

    const double first = trace.rows.front().bound_comm;
    const double final = trace.rows.back().bound_comm;
    trace.converged = final <= std::max(spec.tol, first / 50.0);
    const bool inv_n_driven = (spec.theta_seq && spec.theta_seq->kind == SeqKind::inv_n) ||
                              (spec.sigma_seq && spec.sigma_seq->kind == SeqKind::inv_n);
    if (inv_n_driven && trace.slope && *trace.slope > -0.9) trace.converged = false;
    return trace;
}

namespace {

LemmaVerdict lemma_verdict(const SeparableOperator& final_comm,
                           const SeparableOperator& limit_comm, double tol) {
    LemmaVerdict verdict;
    verdict.final_comm_norm = kernel_norm(final_comm);
    verdict.limit_comm_norm = kernel_norm(limit_comm);
    verdict.commutators_vanish = is_zero_operator(final_comm, tol);
    verdict.limits_commute = is_zero_operator(limit_comm, tol);
    verdict.consistent = verdict.commutators_vanish == verdict.limits_commute;
    return verdict;
}

} // namespace

LemmaVerdict check_lemma_one_sided(const std::vector<SeparableOperator>& c_seq,
                                   const SeparableOperator& d,
                                   const SeparableOperator& c_limit, double tol) {
    if (c_seq.empty()) throw error("check_lemma_one_sided: empty sequence");
    return lemma_verdict(commutator(c_seq.back(), d), commutator(c_limit, d), tol);
}

LemmaVerdict check_lemma_two_sided(const std::vector<SeparableOperator>& c_seq,
                                   const std::vector<SeparableOperator>& d_seq,
                                   const SeparableOperator& c_limit,
                                   const SeparableOperator& d_limit, double tol) {
    if (c_seq.empty() || d_seq.empty()) throw error("check_lemma_two_sided: empty sequence");
    return lemma_verdict(commutator(c_seq.back(), d_seq.back()),
                         commutator(c_limit, d_limit), tol);
}

ScanTrace parameter_limit_scan(const ScanSpec& spec) {
    if (spec.steps < 1) throw error("parameter_limit_scan: steps must be >= 1");
    ScanTrace trace;
    for (int k = 1; k <= spec.steps; ++k) {
        FamilyParams params = spec.params;
        const double value = spec.rule.value(k);
        set_family_param(params, spec.param_name, value);
        Family fam = make_family(spec.family, params, spec.p); // throws when leaving Lambda
        ScanRow row;
        row.k = k;
        row.param_value = value;
        row.bound = box_bound(fam.expected_comm, spec.p);
        trace.rows.push_back(row);
    }
    const double first = trace.rows.front().bound;
    const double final = trace.rows.back().bound;
    trace.converged = final <= std::max(spec.tol, first / 50.0);
    return trace;
}

} // namespace sepkern
