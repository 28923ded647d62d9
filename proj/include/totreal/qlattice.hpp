#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "totreal/cyclo.hpp"
#include "totreal/numberfield.hpp"
#include "totreal/units.hpp"

namespace totreal {

using QMat = std::vector<std::vector<Rat>>;
using ZMat = std::vector<std::vector<Int>>;

namespace detail {

/// x with x <= sqrt(r) - c < x + 1 (largest integer below the bound);
/// exact, assuming r >= 0.
inline Int floor_sqrt_shift(const Rat& r, const Rat& c) {
    // predicate: x + c <= sqrt(r)  <=>  x + c <= 0  or  (x+c)^2 <= r
    auto ok = [&](const Int& x) {
        Rat t = Rat(x) + c;
        if (t <= 0) return true;
        return t * t <= r;
    };
    // initial guess via integer sqrt
    Int guess = isqrt(r.get_num() / r.get_den() + 1) + 1 - floor_rat(c);
    while (!ok(guess)) guess -= 1;
    while (ok(guess + 1)) guess += 1;
    return guess;
}

/// smallest integer x with x >= -sqrt(r) - c.
inline Int ceil_neg_sqrt_shift(const Rat& r, const Rat& c) {
    // x >= -sqrt(r) - c  <=>  x + c >= -sqrt(r)  <=>  x + c >= 0 or (x+c)^2 <= r
    auto ok = [&](const Int& x) {
        Rat t = Rat(x) + c;
        if (t >= 0) return true;
        return t * t <= r;
    };
    Int guess = -(isqrt(r.get_num() / r.get_den() + 1) + 1) - ceil_rat(c);
    while (!ok(guess)) guess += 1;
    while (ok(guess - 1)) guess -= 1;
    return guess;
}

/// Fincke-Pohst decomposition of a symmetric positive definite rational
/// matrix: x^T G x = sum_i q[i][i] (x_i + sum_{j>i} q[i][j] x_j)^2.
/// Returns nullopt when G is not positive definite.
inline std::optional<QMat> fp_decompose(QMat q) {
    const std::size_t n = q.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (q[i][i] <= 0) return std::nullopt;
        for (std::size_t j = i + 1; j < n; ++j) {
            q[j][i] = q[i][j];           // stash the undivided value
            q[i][j] = q[i][j] / q[i][i];
        }
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j; k < n; ++k) q[j][k] -= q[j][i] * q[i][k];
    }
    return q;
}

/// All integer vectors with x^T G x exactly equal to target, collected by
/// depth-first search with exact rational interval bounds.  Returns false
/// if the node budget ran out before the enumeration completed.
inline bool enumerate_equal(const QMat& fp, const Rat& target, unsigned long budget,
                            unsigned long& nodes, std::vector<std::vector<Int>>& out) {
    const std::size_t n = fp.size();
    std::vector<Int> x(n, 0);
    bool complete = true;

    auto dfs = [&](auto&& self, std::size_t level_plus1, const Rat& rem) -> bool {
        if (level_plus1 == 0) {
            if (rem == 0) out.push_back(x);
            return true;
        }
        std::size_t i = level_plus1 - 1;
        // c_i = sum_{j > i} fp[i][j] x_j
        Rat c(0);
        for (std::size_t j = i + 1; j < n; ++j) c += fp[i][j] * Rat(x[j]);
        // q_ii (x_i + c)^2 <= rem
        Rat bound = rem / fp[i][i];
        Int hi = floor_sqrt_shift(bound, c);
        Int lo = ceil_neg_sqrt_shift(bound, c);
        for (Int v = hi; v >= lo; v -= 1) {
            if (++nodes > budget) { complete = false; return false; }
            x[i] = v;
            Rat term = (Rat(v) + c);
            term = fp[i][i] * term * term;
            if (!self(self, i, rem - term)) return false;
        }
        x[i] = 0;
        return true;
    };
    dfs(dfs, n, target);
    return complete;
}

} // namespace detail

/**
 * Restriction of scalars: the rank-n lattice over a degree-d field viewed
 * as a rank-(n d) lattice over Z, carrying the trace form
 * T(v, w) = Tr(B_Q(v, w)).  `basis` (when present) expresses the lattice as
 * a Z-submodule of the standard module, rows in the ambient Z^(n d).
 */
struct ZRestriction {
    FieldPtr field;
    long rank = 0;           // rank over the field of the ambient lattice
    long dim = 0;            // Z-rank of this lattice
    QMat trace_gram;         // dim x dim, positive definite
    std::optional<ZMat> basis;

    /// Field coordinates (length rank) of an integer vector of length dim.
    std::vector<FieldElement> to_field(const std::vector<Int>& x) const {
        long d = field->degree();
        std::vector<Int> ambient;
        if (basis) {
            ambient.assign(static_cast<std::size_t>(rank * d), 0);
            for (std::size_t r = 0; r < basis->size(); ++r)
                for (std::size_t c = 0; c < ambient.size(); ++c)
                    ambient[c] += x[r] * (*basis)[r][c];
        } else {
            ambient = x;
        }
        std::vector<FieldElement> out;
        out.reserve(static_cast<std::size_t>(rank));
        for (long i = 0; i < rank; ++i) {
            std::vector<Rat> coords(static_cast<std::size_t>(d));
            for (long k = 0; k < d; ++k)
                coords[static_cast<std::size_t>(k)] =
                    Rat(ambient[static_cast<std::size_t>(i * d + k)]);
            out.emplace_back(field, std::move(coords));
        }
        return out;
    }
};

/**
 * Positive definite quadratic lattice over a totally real field: Gram
 * matrix of B_Q values in the power basis, either the free standard module
 * or a Z-submodule of it (integer basis rows in the ambient Z^(n d)).
 */
class QuadraticLattice {
public:
    QuadraticLattice(FieldPtr field, std::vector<std::vector<FieldElement>> gram,
                     std::optional<ZMat> zbasis = std::nullopt)
        : field_(std::move(field)), gram_(std::move(gram)), zbasis_(std::move(zbasis)) {}

    const FieldPtr& field() const { return field_; }
    long rank() const { return static_cast<long>(gram_.size()); }
    const std::vector<std::vector<FieldElement>>& gram() const { return gram_; }
    bool is_free_standard() const { return !zbasis_.has_value(); }
    const std::optional<ZMat>& zbasis() const { return zbasis_; }

    /// Z-rank of the underlying module.
    long zdim() const {
        return zbasis_ ? static_cast<long>(zbasis_->size()) : rank() * field_->degree();
    }

    /// Rank over the field (n for the free module, zdim/d for submodules).
    long rank_over_field() const {
        if (!zbasis_) return rank();
        return zdim() / field_->degree();
    }

    FieldElement bilinear(const std::vector<FieldElement>& v,
                          const std::vector<FieldElement>& w) const {
        FieldElement acc = FieldElement::zero(field_);
        for (long i = 0; i < rank(); ++i)
            for (long j = 0; j < rank(); ++j)
                acc = acc + v[static_cast<std::size_t>(i)] *
                                gram_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
                                w[static_cast<std::size_t>(j)];
        return acc;
    }

    FieldElement quadratic_value(const std::vector<FieldElement>& v) const {
        return bilinear(v, v);
    }

private:
    FieldPtr field_;
    std::vector<std::vector<FieldElement>> gram_;
    std::optional<ZMat> zbasis_;
};

/// Validates symmetry and the integrality conditions: Q(e_i) integral,
/// off-diagonal bilinear values half-integral.
inline QuadraticLattice lattice_create(const FieldPtr& field,
                                       const std::vector<std::vector<FieldElement>>& gram) {
    const std::size_t n = gram.size();
    for (const auto& row : gram)
        if (row.size() != n) throw not_symmetric_error("gram matrix not square");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (!(gram[i][j] == gram[j][i])) throw not_symmetric_error();
    for (std::size_t i = 0; i < n; ++i)
        if (!is_integral(gram[i][i])) throw diagonal_not_integral_error();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (!is_integral(gram[i][j] * Rat(2))) throw offdiagonal_not_half_integral_error();
    return QuadraticLattice(field, gram);
}

/// Positive definiteness via total positivity of the leading principal
/// minors (exact determinants over the field).
inline bool is_positive_definite(const QuadraticLattice& L) {
    const FieldPtr& K = L.field();
    long n = L.rank();
    for (long k = 1; k <= n; ++k) {
        // determinant of the leading k x k block by fraction-free-ish Gauss
        std::vector<std::vector<FieldElement>> m(static_cast<std::size_t>(k),
                                                 std::vector<FieldElement>());
        for (long i = 0; i < k; ++i) {
            m[static_cast<std::size_t>(i)].assign(L.gram()[static_cast<std::size_t>(i)].begin(),
                                                  L.gram()[static_cast<std::size_t>(i)].begin() + k);
        }
        FieldElement det = FieldElement::one(K);
        bool zero = false;
        for (long col = 0; col < k && !zero; ++col) {
            long piv = -1;
            for (long row = col; row < k; ++row)
                if (!m[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)].is_zero()) {
                    piv = row;
                    break;
                }
            if (piv < 0) { zero = true; break; }
            if (piv != col) {
                std::swap(m[static_cast<std::size_t>(piv)], m[static_cast<std::size_t>(col)]);
                det = -det;
            }
            FieldElement pval = m[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
            det = det * pval;
            FieldElement pinv = pval.inverse();
            for (long row = col + 1; row < k; ++row) {
                FieldElement factor =
                    m[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] * pinv;
                if (factor.is_zero()) continue;
                for (long cc = col; cc < k; ++cc)
                    m[static_cast<std::size_t>(row)][static_cast<std::size_t>(cc)] =
                        m[static_cast<std::size_t>(row)][static_cast<std::size_t>(cc)] -
                        factor * m[static_cast<std::size_t>(col)][static_cast<std::size_t>(cc)];
            }
        }
        if (zero || !is_totally_positive(det)) return false;
    }
    return true;
}

/// Trace-form restriction of scalars; verifies positive definiteness of the
/// resulting rational Gram matrix by exact Cholesky (LDL) pivots.
inline ZRestriction restrict_scalars(const QuadraticLattice& L) {
    if (!is_positive_definite(L)) throw not_positive_definite_error();
    const FieldPtr& K = L.field();
    long d = K->degree(), n = L.rank();
    long nd = n * d;
    // powers of theta as field elements
    std::vector<FieldElement> theta_pow;
    theta_pow.push_back(FieldElement::one(K));
    FieldElement theta = FieldElement::generator(K);
    for (long k = 1; k < 2 * d; ++k) theta_pow.push_back(theta_pow.back() * theta);

    QMat free_gram(static_cast<std::size_t>(nd), std::vector<Rat>(static_cast<std::size_t>(nd)));
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) {
            const FieldElement& g = L.gram()[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            for (long k = 0; k < d; ++k)
                for (long l = 0; l < d; ++l)
                    free_gram[static_cast<std::size_t>(i * d + k)][static_cast<std::size_t>(j * d + l)] =
                        trace(theta_pow[static_cast<std::size_t>(k + l)] * g);
        }

    ZRestriction r;
    r.field = K;
    r.rank = n;
    if (L.is_free_standard()) {
        r.dim = nd;
        r.trace_gram = std::move(free_gram);
    } else {
        const ZMat& U = *L.zbasis();
        long m = static_cast<long>(U.size());
        r.dim = m;
        r.basis = U;
        QMat t(static_cast<std::size_t>(m), std::vector<Rat>(static_cast<std::size_t>(m), Rat(0)));
        for (long a = 0; a < m; ++a)
            for (long b = 0; b < m; ++b) {
                Rat acc(0);
                for (long p = 0; p < nd; ++p)
                    for (long q = 0; q < nd; ++q)
                        acc += Rat(U[static_cast<std::size_t>(a)][static_cast<std::size_t>(p)]) *
                               free_gram[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] *
                               Rat(U[static_cast<std::size_t>(b)][static_cast<std::size_t>(q)]);
                t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = acc;
            }
        r.trace_gram = std::move(t);
    }
    if (!detail::fp_decompose(r.trace_gram))
        throw error("InternalError", "restriction trace form is not positive definite");
    return r;
}

struct RepresentResult {
    enum class Status { Found, Exhausted, BudgetExceeded };
    Status status = Status::Exhausted;
    std::vector<Int> witness;               // restricted integer coordinates
    std::vector<FieldElement> field_witness; // same vector, field coordinates
    unsigned long nodes = 0;
};

/**
 * Decide representation of alpha by the lattice: enumerate the finitely
 * many integer vectors with trace-form value Tr(alpha), filter by exact
 * equality Q(x) = alpha in the field, and return the lexicographically
 * greatest witness (matching the documented fixtures).  No floating point
 * enters anywhere; bounds are exact rational Fincke-Pohst bounds.
 *
 * When the node budget runs out, the outcome is BudgetExceeded unless a
 * witness was already found, in which case the witness is returned (the
 * lex tie-break then applies to the explored part of the tree, still
 * deterministically).
 */
inline RepresentResult represent(const QuadraticLattice& L, const FieldElement& alpha,
                                 unsigned long budget = 1000000) {
    if (!alpha.is_zero() && !is_totally_positive(alpha)) throw not_totally_nonnegative_error();
    if (!is_integral(alpha)) throw not_integral_error();
    ZRestriction r = restrict_scalars(L);
    RepresentResult res;
    if (alpha.is_zero()) {
        res.status = RepresentResult::Status::Found;
        res.witness.assign(static_cast<std::size_t>(r.dim), 0);
        res.field_witness = r.to_field(res.witness);
        return res;
    }
    Rat t = trace(alpha);
    if (t.get_den() != 1)
        throw error("InternalError", "integral element with non-integer trace");
    auto fp = detail::fp_decompose(r.trace_gram);
    if (!fp) throw not_positive_definite_error();
    std::vector<std::vector<Int>> solutions;
    bool complete = detail::enumerate_equal(*fp, t, budget, res.nodes, solutions);
    std::vector<std::vector<Int>> witnesses;
    for (auto& x : solutions) {
        auto v = r.to_field(x);
        if (L.quadratic_value(v) == alpha) witnesses.push_back(std::move(x));
    }
    if (!witnesses.empty()) {
        auto best = std::max_element(witnesses.begin(), witnesses.end());
        res.status = RepresentResult::Status::Found;
        res.witness = *best;
        res.field_witness = r.to_field(res.witness);
        return res;
    }
    res.status = complete ? RepresentResult::Status::Exhausted
                          : RepresentResult::Status::BudgetExceeded;
    return res;
}

namespace detail {

/// Basis of the integer kernel {y : A y = 0} of an integer matrix A (rows x
/// cols), via unimodular row reduction of [A^T | I].
inline ZMat integer_kernel(const ZMat& a, long cols) {
    long rows = static_cast<long>(a.size());
    // M = [A^T | I_cols]: cols rows, rows + cols columns
    ZMat m(static_cast<std::size_t>(cols),
           std::vector<Int>(static_cast<std::size_t>(rows + cols), 0));
    for (long i = 0; i < cols; ++i) {
        for (long j = 0; j < rows; ++j) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = a[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
        m[static_cast<std::size_t>(i)][static_cast<std::size_t>(rows + i)] = 1;
    }
    long row = 0;
    for (long col = 0; col < rows && row < cols; ++col) {
        // gcd-eliminate column col below/at row
        for (;;) {
            long piv = -1;
            Int best = 0;
            for (long i = row; i < cols; ++i) {
                const Int& v = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)];
                if (v != 0 && (piv < 0 || abs(v) < best)) {
                    piv = i;
                    best = abs(v);
                }
            }
            if (piv < 0) break;
            std::swap(m[static_cast<std::size_t>(piv)], m[static_cast<std::size_t>(row)]);
            bool all_zero = true;
            for (long i = row + 1; i < cols; ++i) {
                Int q = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)] /
                        m[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)];
                if (q != 0)
                    for (long k = 0; k < rows + cols; ++k)
                        m[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] -=
                            q * m[static_cast<std::size_t>(row)][static_cast<std::size_t>(k)];
                if (m[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)] != 0) all_zero = false;
            }
            if (all_zero) break;
        }
        if (m[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] != 0) ++row;
    }
    ZMat kernel;
    for (long i = row; i < cols; ++i) {
        // rows whose A^T-part vanished entirely
        bool zero = true;
        for (long j = 0; j < rows; ++j)
            if (m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] != 0) zero = false;
        if (!zero) continue;
        std::vector<Int> v(m[static_cast<std::size_t>(i)].begin() + rows,
                           m[static_cast<std::size_t>(i)].end());
        // normalize: first nonzero entry positive
        for (const auto& e : v) {
            if (e == 0) continue;
            if (e < 0)
                for (auto& w : v) w = -w;
            break;
        }
        kernel.push_back(std::move(v));
    }
    std::sort(kernel.begin(), kernel.end());
    return kernel;
}

} // namespace detail

/**
 * The orthogonal complement sublattice {w : B_Q(v, w) = 0}, carried as a
 * Z-submodule (integer kernel of the d linear conditions, one per
 * power-basis coordinate of the bilinear value).
 */
inline QuadraticLattice orthogonal_sublattice(const QuadraticLattice& L,
                                              const std::vector<Int>& v) {
    bool all_zero = true;
    for (const auto& c : v)
        if (c != 0) all_zero = false;
    if (all_zero) throw zero_vector_error();
    ZRestriction r = restrict_scalars(L);
    const FieldPtr& K = L.field();
    long d = K->degree();
    long nd = L.rank() * d;
    std::vector<FieldElement> vf = r.to_field(v);
    // condition rows: for each ambient basis vector f_(j,l), the d power
    // coordinates of B(v, f_(j,l))
    ZMat rows(static_cast<std::size_t>(d), std::vector<Int>(static_cast<std::size_t>(nd), 0));
    QMat rows_q(static_cast<std::size_t>(d), std::vector<Rat>(static_cast<std::size_t>(nd), Rat(0)));
    FieldElement theta = FieldElement::generator(K);
    for (long j = 0; j < L.rank(); ++j) {
        std::vector<FieldElement> basis_vec(static_cast<std::size_t>(L.rank()),
                                            FieldElement::zero(K));
        FieldElement tp = FieldElement::one(K);
        for (long l = 0; l < d; ++l) {
            basis_vec[static_cast<std::size_t>(j)] = tp;
            FieldElement b = L.bilinear(vf, basis_vec);
            for (long c = 0; c < d; ++c)
                rows_q[static_cast<std::size_t>(c)][static_cast<std::size_t>(j * d + l)] =
                    b.coords()[static_cast<std::size_t>(c)];
            tp = tp * theta;
        }
        basis_vec[static_cast<std::size_t>(j)] = FieldElement::zero(K);
    }
    // scale each row to integers
    for (long c = 0; c < d; ++c) {
        Int den = 1;
        for (long k = 0; k < nd; ++k) den = lcm(den, rows_q[static_cast<std::size_t>(c)][static_cast<std::size_t>(k)].get_den());
        for (long k = 0; k < nd; ++k)
            rows[static_cast<std::size_t>(c)][static_cast<std::size_t>(k)] =
                Rat(rows_q[static_cast<std::size_t>(c)][static_cast<std::size_t>(k)] * Rat(den)).get_num();
    }
    ZMat kernel;
    if (L.is_free_standard()) {
        kernel = detail::integer_kernel(rows, nd);
    } else {
        // restrict the conditions to the parent module: columns become the
        // parent basis vectors, and kernel rows are recombined into ambient
        // coordinates afterwards
        const ZMat& U = *L.zbasis();
        long m = static_cast<long>(U.size());
        ZMat restricted(static_cast<std::size_t>(d), std::vector<Int>(static_cast<std::size_t>(m), 0));
        for (long c = 0; c < d; ++c)
            for (long b = 0; b < m; ++b) {
                Int acc = 0;
                for (long k = 0; k < nd; ++k)
                    acc += rows[static_cast<std::size_t>(c)][static_cast<std::size_t>(k)] *
                           U[static_cast<std::size_t>(b)][static_cast<std::size_t>(k)];
                restricted[static_cast<std::size_t>(c)][static_cast<std::size_t>(b)] = acc;
            }
        ZMat kern_y = detail::integer_kernel(restricted, m);
        for (const auto& y : kern_y) {
            std::vector<Int> ambient(static_cast<std::size_t>(nd), 0);
            for (long b = 0; b < m; ++b)
                for (long k = 0; k < nd; ++k)
                    ambient[static_cast<std::size_t>(k)] +=
                        y[static_cast<std::size_t>(b)] * U[static_cast<std::size_t>(b)][static_cast<std::size_t>(k)];
            kernel.push_back(std::move(ambient));
        }
    }
    QuadraticLattice sub(K, L.gram(), kernel);
    if (sub.rank_over_field() > L.rank_over_field() - 1)
        throw error("InternalError", "orthogonal sublattice rank did not drop");
    return sub;
}

/// Which totally positive unit classes the lattice represents, with the
/// rank bounds of the underlying theorem checked on the fly.
struct SquareClassCoverage {
    std::optional<QuadraticLattice> lattice;
    std::vector<FieldElement> tested_representatives;
    std::vector<std::size_t> represented; // indices into tested_representatives
    std::vector<RepresentResult> outcomes;
    long bound_2n_minus_2 = 0;
    bool bound_n_applicable = false;
};

/**
 * Runs `represent` on every unit-class representative and applies the
 * 2n-2 bound (and the n bound when gamma_K K^2 misses the totally positive
 * units, decided on the class representatives).  A bound violation throws:
 * it cannot occur unless the implementation is wrong.
 */
inline SquareClassCoverage represented_unit_classes(const QuadraticLattice& L,
                                                    const UnitClassReport& report,
                                                    unsigned long budget = 1000000) {
    SquareClassCoverage cov;
    cov.lattice = L;
    long n = L.rank_over_field();
    cov.bound_2n_minus_2 = n >= 2 ? 2 * n - 2 : 1;
    cov.tested_representatives = report.representatives;

    GammaResult g = gamma(L.field());
    bool gamma_hits_units = false;
    for (const auto& r : report.representatives)
        if (sqrt_in_field(g.value * r)) gamma_hits_units = true;
    cov.bound_n_applicable = !gamma_hits_units;

    for (std::size_t i = 0; i < report.representatives.size(); ++i) {
        RepresentResult rr = represent(L, report.representatives[i], budget);
        if (rr.status == RepresentResult::Status::BudgetExceeded) throw budget_exceeded_error();
        if (rr.status == RepresentResult::Status::Found) cov.represented.push_back(i);
        cov.outcomes.push_back(std::move(rr));
    }

    long count = static_cast<long>(cov.represented.size());
    if (count > cov.bound_2n_minus_2)
        throw bound_violated_error("represented classes exceed 2n-2");
    if (cov.bound_n_applicable && count > std::max<long>(n, 1))
        throw bound_violated_error("represented classes exceed n under the gamma condition");
    return cov;
}

/// Deterministic element pools for Gram sampling over a real quadratic
/// field: integral totally positive diagonal candidates and half-integral
/// off-diagonal candidates, all with house below the bound.
struct GramPools {
    std::vector<FieldElement> diag;
    std::vector<FieldElement> off;
};

inline GramPools build_gram_pools(const FieldPtr& K, long house_bound) {
    GramPools pools;
    long B = house_bound;
    for (long a = -2 * B; a <= 2 * B; ++a)
        for (long b = -2 * B; b <= 2 * B; ++b) {
            FieldElement e(K, {Rat(a), Rat(b)});
            if (e.is_zero()) continue;
            if (house_compare(e, Rat(B)) == Ordering3::GT) continue;
            if (is_totally_positive(e)) pools.diag.push_back(e);
        }
    for (long a = -4 * B; a <= 4 * B; ++a)
        for (long b = -4 * B; b <= 4 * B; ++b) {
            FieldElement e(K, {Rat(a, 2), Rat(b, 2)});
            if (house_compare(e, Rat(B)) == Ordering3::GT) continue;
            pools.off.push_back(e);
        }
    return pools;
}

struct Question42Result {
    std::vector<SquareClassCoverage> hits; // coverage above the rank, if any
    long examined = 0;                     // positive definite lattices tested
    std::size_t max_coverage = 0;
};

/**
 * Search harness: enumerate positive definite Gram matrices over the
 * quadratic field with entry house below the given bound, and report any
 * lattice covering at least n+1 classes (the underlying question is open;
 * hits are findings, not errors).  Deterministic order; `max_lattices`
 * caps the scan.
 */
inline Question42Result question42_search(const UnitClassReport& report,
                                          long rank, long coefficient_bound,
                                          unsigned long budget,
                                          long max_lattices = 1000) {
    const FieldPtr& K = report.representatives.front().field();
    GramPools pools = build_gram_pools(K, coefficient_bound);
    const std::vector<FieldElement>& diag_pool = pools.diag;
    const std::vector<FieldElement>& off_pool = pools.off;

    Question42Result result;
    std::vector<SquareClassCoverage>& hits = result.hits;
    long& examined = result.examined;
    // deterministic nested scan over diagonal entries and one off-diagonal
    // profile at a time
    std::vector<std::size_t> diag_idx(static_cast<std::size_t>(rank), 0);
    std::vector<std::size_t> off_idx(static_cast<std::size_t>(rank * (rank - 1) / 2), 0);
    auto build = [&]() {
        std::vector<std::vector<FieldElement>> gram(
            static_cast<std::size_t>(rank),
            std::vector<FieldElement>(static_cast<std::size_t>(rank), FieldElement::zero(K)));
        for (long i = 0; i < rank; ++i)
            gram[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] =
                diag_pool[diag_idx[static_cast<std::size_t>(i)]];
        std::size_t t = 0;
        for (long i = 0; i < rank; ++i)
            for (long j = i + 1; j < rank; ++j) {
                gram[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    off_pool[off_idx[t]];
                gram[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
                    off_pool[off_idx[t]];
                ++t;
            }
        return gram;
    };
    // odometer over the index vectors
    auto advance = [&]() -> bool {
        for (std::size_t t = 0; t < off_idx.size(); ++t) {
            if (++off_idx[t] < off_pool.size()) return true;
            off_idx[t] = 0;
        }
        for (std::size_t t = 0; t < diag_idx.size(); ++t) {
            if (++diag_idx[t] < diag_pool.size()) return true;
            diag_idx[t] = 0;
        }
        return false;
    };
    do {
        if (examined >= max_lattices) break;
        auto gram = build();
        QuadraticLattice L(K, gram);
        if (!is_positive_definite(L)) continue;
        ++examined;
        SquareClassCoverage cov = represented_unit_classes(L, report, budget);
        result.max_coverage = std::max(result.max_coverage, cov.represented.size());
        if (static_cast<long>(cov.represented.size()) > rank) hits.push_back(std::move(cov));
    } while (advance());
    std::sort(hits.begin(), hits.end(), [](const SquareClassCoverage& a, const SquareClassCoverage& b) {
        return a.represented.size() > b.represented.size();
    });
    return result;
}

} // namespace totreal
