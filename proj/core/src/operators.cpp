#include "sepkern/operators.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>

#include "sepkern/errors.hpp"

namespace sepkern {

namespace {

// dense row-major matrix, sizes are tiny (operator ranks)
struct Mat {
    int n = 0;
    std::vector<double> a;

    Mat() = default;
    explicit Mat(int size) : n(size), a(static_cast<std::size_t>(size) * size, 0.0) {}

    double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
    double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }

    static Mat identity(int size) {
        Mat m(size);
        for (int i = 0; i < size; ++i) m(i, i) = 1.0;
        return m;
    }

    Mat mul(const Mat& other) const {
        Mat out(n);
        for (int i = 0; i < n; ++i) {
            for (int k = 0; k < n; ++k) {
                const double aik = (*this)(i, k);
                if (aik == 0.0) continue;
                for (int j = 0; j < n; ++j) out(i, j) += aik * other(k, j);
            }
        }
        return out;
    }

    void axpy(double alpha, const Mat& other) {
        for (std::size_t i = 0; i < a.size(); ++i) a[i] += alpha * other.a[i];
    }
};

// Gram matrix of the operator: M[i][j] = Q(left_j, right_i), the scalar that
// chains term j after term i in a composition.
Mat gram_matrix(const SeparableOperator& op) {
    const int n = op.rank();
    Mat m(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            m(i, j) = pairing(op.terms[j].left, op.terms[i].right).value;
        }
    }
    return m;
}

std::uint64_t bits(double x) {
    if (x == 0.0) x = 0.0; // collapse -0
    return std::bit_cast<std::uint64_t>(x);
}

// Structural key of an expression up to one global scalar: windows, atom
// shapes and coefficient ratios against the leading coefficient.
struct LeftKey {
    std::vector<std::uint64_t> words;
    bool operator<(const LeftKey& other) const { return words < other.words; }
};

double leading_coef(const FunctionExpr& f) {
    for (const Segment& seg : f.segments()) {
        for (const Monomial& m : seg.terms) return m.coef;
    }
    return 0.0;
}

LeftKey fingerprint(const FunctionExpr& f, double lead) {
    LeftKey key;
    for (const Segment& seg : f.segments()) {
        key.words.push_back(seg.window ? seg.window->pieces().size() : ~0ULL);
        if (seg.window) {
            for (const Interval& piece : seg.window->pieces()) {
                key.words.push_back(bits(piece.lo));
                key.words.push_back(bits(piece.hi));
            }
        }
        for (const Monomial& m : seg.terms) {
            key.words.push_back(static_cast<std::uint64_t>(static_cast<std::int64_t>(m.power)));
            key.words.push_back(static_cast<std::uint64_t>(m.trig));
            key.words.push_back(bits(m.omega));
            key.words.push_back(bits(m.coef / lead));
        }
    }
    return key;
}

// Solve the SPD system G x = b in place by Cholesky; returns false when the
// matrix is numerically singular at the working precision.
bool spd_solve(std::vector<std::vector<double>> g, std::vector<double>& b) {
    const int n = static_cast<int>(b.size());
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            double sum = g[i][j];
            for (int k = 0; k < j; ++k) sum -= g[i][k] * g[j][k];
            if (i == j) {
                if (sum <= 0.0) return false;
                g[i][i] = std::sqrt(sum);
            } else {
                g[i][j] = sum / g[j][j];
            }
        }
    }
    for (int i = 0; i < n; ++i) {
        double sum = b[i];
        for (int k = 0; k < i; ++k) sum -= g[i][k] * b[k];
        b[i] = sum / g[i][i];
    }
    for (int i = n - 1; i >= 0; --i) {
        double sum = b[i];
        for (int k = i + 1; k < n; ++k) sum -= g[k][i] * b[k];
        b[i] = sum / g[i][i];
    }
    return true;
}

bool has_window(const FunctionExpr& f) {
    for (const Segment& seg : f.segments()) {
        if (!seg.window) return false;
    }
    return true;
}

} // namespace

double conjugate_exponent(double p) {
    if (p == 1.0) return kInf;
    if (p == kInf) return 1.0;
    return p / (p - 1.0);
}

SeparableOperator make_operator(std::vector<KernelTerm> terms, SupportSet support,
                                double p, bool validate) {
    SeparableOperator op;
    op.support = std::move(support);
    op.p = p;
    op.terms = std::move(terms);
    for (KernelTerm& term : op.terms) {
        term.right = term.right.windowed(op.support);
    }
    std::erase_if(op.terms, [](const KernelTerm& t) {
        return t.left.structurally_zero() || t.right.structurally_zero();
    });
    if (validate) {
        const double q = conjugate_exponent(p);
        for (const KernelTerm& term : op.terms) {
            try {
                if (!std::isfinite(lp_norm(term.left, p))) {
                    throw membership_error("left factor not in L_p of its window");
                }
                if (!std::isfinite(lp_norm(term.right, q))) {
                    throw membership_error("right factor not in L_q of the support");
                }
            } catch (const non_integrable& err) {
                throw membership_error(std::string("kernel factor outside its space: ") +
                                       err.what());
            }
        }
    }
    return op;
}

FunctionExpr apply(const SeparableOperator& op, const FunctionExpr& x) {
    FunctionExpr out = x * op.scalar;
    for (const KernelTerm& term : op.terms) {
        const double q = pairing(term.right, x).value;
        if (q != 0.0) out += term.left * q;
    }
    return out;
}

SeparableOperator compose(const SeparableOperator& a, const SeparableOperator& b) {
    SeparableOperator out;
    out.p = a.p;
    out.scalar = a.scalar * b.scalar;
    out.support = b.support;
    if (b.scalar != 0.0) out.support = out.support.unite(a.support);
    for (const KernelTerm& bt : b.terms) {
        if (a.scalar != 0.0) out.terms.push_back({bt.left * a.scalar, bt.right});
    }
    for (const KernelTerm& at : a.terms) {
        if (b.scalar != 0.0) out.terms.push_back({at.left * b.scalar, at.right});
    }
    for (const KernelTerm& at : a.terms) {
        FunctionExpr right_combo;
        for (const KernelTerm& bt : b.terms) {
            const double q = pairing(bt.left, at.right).value;
            if (q != 0.0) right_combo += bt.right * q;
        }
        if (!right_combo.structurally_zero()) out.terms.push_back({at.left, right_combo});
    }
    merge_terms(out);
    return out;
}

SeparableOperator power(const SeparableOperator& op, int m) {
    if (op.scalar != 0.0) throw error("power: operator must have no identity part");
    if (m < 1) throw error("power: exponent must be >= 1");
    if (m == 1 || op.terms.empty()) return op;
    Mat gram = gram_matrix(op);
    Mat p = Mat::identity(op.rank());
    for (int e = 1; e < m; ++e) p = p.mul(gram);
    SeparableOperator out;
    out.p = op.p;
    out.support = op.support;
    for (int i = 0; i < op.rank(); ++i) {
        FunctionExpr combo;
        for (int j = 0; j < op.rank(); ++j) {
            if (p(i, j) != 0.0) combo += op.terms[j].right * p(i, j);
        }
        if (!combo.structurally_zero()) out.terms.push_back({op.terms[i].left, combo});
    }
    merge_terms(out);
    return out;
}

SeparableOperator polynomial(const PolynomialSpec& f, const SeparableOperator& op) {
    if (op.scalar != 0.0) throw error("polynomial: operator must have no identity part");
    SeparableOperator out;
    out.p = op.p;
    out.support = op.support;
    out.scalar = f.at(0);
    if (f.degree() < 1 || op.terms.empty()) return out;
    const int n = op.rank();
    Mat gram = gram_matrix(op);
    Mat running = Mat::identity(n); // M^(j-1)
    Mat combo(n);                   // sum_j f_j M^(j-1)
    for (int j = 1; j <= f.degree(); ++j) {
        if (f.at(j) != 0.0) combo.axpy(f.at(j), running);
        if (j < f.degree()) running = running.mul(gram);
    }
    for (int i = 0; i < n; ++i) {
        FunctionExpr right;
        for (int j = 0; j < n; ++j) {
            if (combo(i, j) != 0.0) right += op.terms[j].right * combo(i, j);
        }
        if (!right.structurally_zero()) out.terms.push_back({op.terms[i].left, right});
    }
    merge_terms(out);
    return out;
}

SeparableOperator commutator(const SeparableOperator& a, const SeparableOperator& b) {
    if (!(a.support == b.support)) {
        throw support_mismatch("commutator requires a common integration domain");
    }
    return op_sub(compose(a, b), compose(b, a));
}

SeparableOperator adjoint(const SeparableOperator& op, bool validate) {
    if (op.scalar != 0.0) throw error("adjoint: operator must have no identity part");
    SeparableOperator out;
    out.p = conjugate_exponent(op.p);
    SupportSet support;
    for (const KernelTerm& term : op.terms) {
        std::optional<SupportSet> dom = term.left.domain();
        if (!dom) {
            throw membership_error("adjoint needs windowed output factors");
        }
        support = support.unite(*dom);
    }
    out.support = support;
    for (const KernelTerm& term : op.terms) {
        out.terms.push_back({term.right, term.left});
    }
    if (validate) {
        const double q = conjugate_exponent(out.p);
        for (const KernelTerm& term : out.terms) {
            try {
                if (!std::isfinite(lp_norm(term.left, out.p)) ||
                    !std::isfinite(lp_norm(term.right, q))) {
                    throw membership_error("adjoint factor outside its space");
                }
            } catch (const non_integrable& err) {
                throw membership_error(std::string("adjoint factor outside its space: ") +
                                       err.what());
            }
        }
    }
    return out;
}

SeparableOperator op_add(const SeparableOperator& a, const SeparableOperator& b) {
    SeparableOperator out;
    out.p = a.p;
    out.scalar = a.scalar + b.scalar;
    out.support = a.support.unite(b.support);
    out.terms = a.terms;
    out.terms.insert(out.terms.end(), b.terms.begin(), b.terms.end());
    merge_terms(out);
    return out;
}

SeparableOperator op_sub(const SeparableOperator& a, const SeparableOperator& b) {
    return op_add(a, op_scale(b, -1.0));
}

SeparableOperator op_scale(const SeparableOperator& a, double s) {
    SeparableOperator out = a;
    out.scalar *= s;
    if (s == 0.0) {
        out.terms.clear();
        return out;
    }
    for (KernelTerm& term : out.terms) term.left = term.left * s;
    return out;
}

void merge_terms(SeparableOperator& op, double rel_tol) {
    std::erase_if(op.terms, [](const KernelTerm& t) {
        return t.left.structurally_zero() || t.right.structurally_zero();
    });
    if (op.terms.size() <= 1) return;

    // 1. fold terms whose left factors are structurally proportional
    std::map<LeftKey, std::size_t> groups;
    std::vector<KernelTerm> folded;
    std::vector<double> leads;
    for (KernelTerm& term : op.terms) {
        const double lead = leading_coef(term.left);
        LeftKey key = fingerprint(term.left, lead);
        auto [it, inserted] = groups.try_emplace(key, folded.size());
        if (inserted) {
            folded.push_back(std::move(term));
            leads.push_back(lead);
        } else {
            KernelTerm& dst = folded[it->second];
            dst.right += term.right * (lead / leads[it->second]);
        }
    }
    std::erase_if(folded, [](const KernelTerm& t) { return t.right.structurally_zero(); });
    op.terms = std::move(folded);
    if (op.terms.size() <= 1) return;

    // 2. Gram-based pivoted elimination of linearly dependent left factors
    for (const KernelTerm& term : op.terms) {
        if (!has_window(term.left)) return; // no L2 Gram without windows
    }
    const int n = op.rank();
    std::vector<std::vector<double>> g(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            g[i][j] = g[j][i] = pairing(op.terms[i].left, op.terms[j].left).value;
        }
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&g](int a, int b) {
        if (g[a][a] != g[b][b]) return g[a][a] > g[b][b];
        return a < b;
    });

    std::vector<int> basis;
    std::vector<char> dropped(n, 0);
    for (int j : order) {
        if (g[j][j] == 0.0) {
            dropped[j] = 1;
            continue;
        }
        if (!basis.empty()) {
            std::vector<std::vector<double>> gbb(basis.size(), std::vector<double>(basis.size()));
            std::vector<double> gbj(basis.size());
            for (std::size_t r = 0; r < basis.size(); ++r) {
                gbj[r] = g[basis[r]][j];
                for (std::size_t c = 0; c < basis.size(); ++c) gbb[r][c] = g[basis[r]][basis[c]];
            }
            std::vector<double> x = gbj;
            if (spd_solve(gbb, x)) {
                double residual2 = g[j][j];
                for (std::size_t r = 0; r < basis.size(); ++r) residual2 -= x[r] * gbj[r];
                if (residual2 <= rel_tol * rel_tol * g[j][j]) {
                    // left_j = sum_r x_r left_{basis_r}: fold the right factor
                    for (std::size_t r = 0; r < basis.size(); ++r) {
                        if (x[r] != 0.0) {
                            op.terms[basis[r]].right += op.terms[j].right * x[r];
                        }
                    }
                    dropped[j] = 1;
                    continue;
                }
            }
        }
        basis.push_back(j);
    }
    std::vector<KernelTerm> reduced;
    for (int i = 0; i < n; ++i) {
        if (!dropped[i] && !op.terms[i].right.structurally_zero()) {
            reduced.push_back(std::move(op.terms[i]));
        }
    }
    op.terms = std::move(reduced);
}

double kernel_norm2(const std::vector<KernelTerm>& terms,
                    const std::optional<SupportSet>& s_restrict) {
    double total = 0.0;
    for (std::size_t k = 0; k < terms.size(); ++k) {
        for (std::size_t l = 0; l < terms.size(); ++l) {
            const double qu = pairing(terms[k].left, terms[l].left).value;
            if (qu == 0.0) continue;
            const double qv = pairing(terms[k].right, terms[l].right, s_restrict).value;
            total += qu * qv;
        }
    }
    return std::max(0.0, total);
}

double kernel_norm(const SeparableOperator& op) {
    return std::sqrt(kernel_norm2(op.terms));
}

double operator_residual(const SeparableOperator& a, const SeparableOperator& b) {
    std::vector<KernelTerm> diff = a.terms;
    for (const KernelTerm& term : b.terms) {
        diff.push_back({term.left * -1.0, term.right});
    }
    return std::sqrt(kernel_norm2(diff));
}

bool operators_equal(const SeparableOperator& a, const SeparableOperator& b, double tol) {
    if (std::abs(a.scalar - b.scalar) > 1e-12) return false;
    const double scale = std::max({kernel_norm(a), kernel_norm(b), 1e-300});
    return operator_residual(a, b) <= tol * scale;
}

bool is_zero_operator(const SeparableOperator& op, double tol) {
    if (std::abs(op.scalar) > tol) return false;
    double scale = 0.0;
    for (const KernelTerm& term : op.terms) {
        scale += std::sqrt(std::max(0.0, pairing(term.left, term.left).value) *
                           std::max(0.0, pairing(term.right, term.right).value));
    }
    return kernel_norm(op) <= tol * std::max(scale, 1.0);
}

} // namespace sepkern
