#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sepkern/families.hpp"
#include "sepkern/operators.hpp"

namespace sepkern {

// Closed-form number sequences: c, c/n, c/n^2, c + c2/n.
enum class SeqKind { constant, inv_n, inv_n2, affine_inv_n };

struct SeqRule {
    SeqKind kind = SeqKind::constant;
    double c = 0.0;
    double c2 = 0.0;

    double value(int n) const;
    double limit() const;
};

SeqKind seq_kind_from_string(const std::string& name);
std::string seq_kind_to_string(SeqKind kind);

// One convergence experiment: run a family's operator sequences A_n / B_n
// and track the explicit norm bounds against empirical commutator norms.
struct SequenceSpec {
    std::string family = "t4";
    FamilyParams params;
    std::optional<SeqRule> theta_seq; // drives A_n
    std::optional<SeqRule> sigma_seq; // drives B_n
    int n_max = 2;
    double p = 2.0;
    int probes = 50;
    std::uint64_t seed = 0;
    double tol = 1e-9;
};

struct TraceRow {
    int n = 0;
    double bound_diff = 0.0;      // bound on ||X_n - X_limit|| (both sequences summed)
    double bound_comm = 0.0;      // bound on ||A_n B_n - B_n A_n||
    double empirical_comm = 0.0;  // probe lower estimate of the same norm
};

struct ConvergenceTrace {
    std::vector<TraceRow> rows;
    std::optional<double> slope; // log-log fit of bound_comm over n
    bool converged = false;      // final <= max(tol, first/50), slope rule for 1/n
};

ConvergenceTrace run_sequence(const SequenceSpec& spec);

// Desk-scale check of the commutator-convergence lemmas: the commutator
// sequence vanishes iff the limit operators commute.
struct LemmaVerdict {
    bool commutators_vanish = false;
    bool limits_commute = false;
    bool consistent = false;
    double final_comm_norm = 0.0;
    double limit_comm_norm = 0.0;
};

LemmaVerdict check_lemma_one_sided(const std::vector<SeparableOperator>& c_seq,
                                   const SeparableOperator& d,
                                   const SeparableOperator& c_limit, double tol = 1e-9);

LemmaVerdict check_lemma_two_sided(const std::vector<SeparableOperator>& c_seq,
                                   const std::vector<SeparableOperator>& d_seq,
                                   const SeparableOperator& c_limit,
                                   const SeparableOperator& d_limit, double tol = 1e-9);

// Move one named parameter along a closed-form path and track the
// commutator-norm bound; every interior point must stay admissible.
struct ScanSpec {
    std::string family = "t4";
    FamilyParams params;
    std::string param_name = "theta_B3";
    SeqRule rule;
    int steps = 2;
    double p = 2.0;
    double tol = 1e-9;
};

struct ScanRow {
    int k = 0;
    double param_value = 0.0;
    double bound = 0.0;
};

struct ScanTrace {
    std::vector<ScanRow> rows;
    bool converged = false;
};

ScanTrace parameter_limit_scan(const ScanSpec& spec);

} // namespace sepkern
