#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "totreal/algebraic.hpp"
#include "totreal/errors.hpp"
#include "totreal/interval.hpp"
#include "totreal/modpoly.hpp"
#include "totreal/poly.hpp"

namespace totreal {

enum class Ordering3 { LT, EQ, GT };

/**
 * A totally real number field presented by the monic integer minimal
 * polynomial of a primitive element theta.  Embeddings are the real roots of
 * the minimal polynomial, kept as isolating intervals in ascending order;
 * the default embedding (used wherever a single real realization of the
 * field must be pinned) is the one at the largest root.
 */
class NumberField {
public:
    /// Validating constructor: rejects non-monic, reducible, and not
    /// totally real presentations.
    static std::shared_ptr<const NumberField> create(const ZPoly& minpoly) {
        return build(minpoly, true);
    }

    /// For internally constructed minimal polynomials whose irreducibility
    /// is known (cosine fields); still checks total realness.
    static std::shared_ptr<const NumberField> create_trusted(const ZPoly& minpoly) {
        return build(minpoly, false);
    }

    static std::shared_ptr<const NumberField> rationals() {
        static std::shared_ptr<const NumberField> q = build(ZPoly({Int(0), Int(1)}), false);
        return q;
    }

    const ZPoly& minpoly() const { return minpoly_; }
    long degree() const { return degree_; }
    const std::vector<AlgebraicReal>& embeddings() const { return embeddings_; }
    std::size_t default_embedding() const { return embeddings_.size() - 1; }

    /// Power sums of the roots: Tr(theta^k), integers for monic minpoly.
    const std::vector<Int>& power_sums() const { return power_sums_; }

    const Int& poly_discriminant() const { return disc_; }

    /// Any algebraic integer of the field has power-basis coordinates with
    /// denominator dividing the index [O_K : Z[theta]], which is at most
    /// this bound.
    const Int& denominator_bound() const { return den_bound_; }

    bool same_field(const NumberField& o) const { return minpoly_ == o.minpoly_; }

private:
    static std::shared_ptr<const NumberField> build(const ZPoly& minpoly, bool check_irreducible) {
        auto f = std::make_shared<NumberField>();
        if (minpoly.degree() < 1) throw not_irreducible_error("constant polynomial");
        if (minpoly.leading() != 1) throw not_monic_error();
        if (check_irreducible && !is_irreducible_over_Q(minpoly))
            throw not_irreducible_error(minpoly.str());
        long d = minpoly.degree();
        if (count_real_roots(minpoly) != static_cast<int>(d))
            throw not_totally_real_error(minpoly.str());
        f->minpoly_ = minpoly;
        f->degree_ = d;
        f->embeddings_ = real_roots_of_irreducible(minpoly);
        // Newton's identities for Tr(theta^k), k = 0 .. 2d
        std::vector<Int> p(static_cast<std::size_t>(2 * d + 1));
        p[0] = d;
        auto a = [&](long i) { return minpoly[static_cast<std::size_t>(i)]; };
        for (long k = 1; k <= 2 * d; ++k) {
            Int acc = 0;
            for (long i = 1; i < k && i <= d; ++i)
                acc += a(d - i) * p[static_cast<std::size_t>(k - i)];
            if (k <= d) acc += Int(k) * a(d - k);
            p[static_cast<std::size_t>(k)] = -acc;
        }
        f->power_sums_ = std::move(p);
        f->disc_ = discriminant(minpoly);
        f->den_bound_ = isqrt(abs(f->disc_)) + 1;
        return f;
    }

public:
    NumberField() = default;

private:
    ZPoly minpoly_;
    long degree_ = 0;
    std::vector<AlgebraicReal> embeddings_;
    std::vector<Int> power_sums_;
    Int disc_;
    Int den_bound_;
};

using FieldPtr = std::shared_ptr<const NumberField>;

/// Element of a number field as rational coordinates in the power basis
/// 1, theta, ..., theta^(d-1).  Immutable value type.
class FieldElement {
public:
    FieldElement() = default;

    FieldElement(FieldPtr field, std::vector<Rat> coords)
        : field_(std::move(field)), coords_(std::move(coords)) {
        coords_.resize(static_cast<std::size_t>(field_->degree()), Rat(0));
        for (auto& c : coords_) c.canonicalize();
    }

    static FieldElement from_rational(const FieldPtr& field, const Rat& v) {
        std::vector<Rat> c(static_cast<std::size_t>(field->degree()), Rat(0));
        c[0] = v;
        return FieldElement(field, std::move(c));
    }

    static FieldElement zero(const FieldPtr& field) { return from_rational(field, Rat(0)); }
    static FieldElement one(const FieldPtr& field) { return from_rational(field, Rat(1)); }

    /// The primitive element theta.
    static FieldElement generator(const FieldPtr& field) {
        std::vector<Rat> c(static_cast<std::size_t>(field->degree()), Rat(0));
        if (field->degree() == 1) {
            // theta is the rational root itself
            c[0] = Rat(-field->minpoly()[0], field->minpoly()[1]);
            c[0].canonicalize();
        } else {
            c[1] = 1;
        }
        return FieldElement(field, std::move(c));
    }

    const FieldPtr& field() const { return field_; }
    const std::vector<Rat>& coords() const { return coords_; }

    bool is_zero() const {
        for (const auto& c : coords_)
            if (c != 0) return false;
        return true;
    }

    bool is_rational() const {
        for (std::size_t i = 1; i < coords_.size(); ++i)
            if (coords_[i] != 0) return false;
        return true;
    }

    const Rat& rational_value() const {
        if (!is_rational()) throw error("InternalError", "element is not rational");
        return coords_[0];
    }

    QPoly as_poly() const { return QPoly(std::vector<Rat>(coords_)); }

    bool operator==(const FieldElement& o) const {
        return field_->same_field(*o.field_) && coords_ == o.coords_;
    }
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

    FieldElement operator-() const {
        std::vector<Rat> c(coords_);
        for (auto& v : c) v = -v;
        return FieldElement(field_, std::move(c));
    }

    FieldElement operator+(const FieldElement& o) const {
        check_same(o);
        std::vector<Rat> c(coords_);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.coords_[i];
        return FieldElement(field_, std::move(c));
    }

    FieldElement operator-(const FieldElement& o) const { return *this + (-o); }

    FieldElement operator*(const FieldElement& o) const {
        check_same(o);
        return FieldElement(field_, reduce(field_, mul_raw(coords_, o.coords_)));
    }

    FieldElement operator*(const Rat& s) const {
        std::vector<Rat> c(coords_);
        for (auto& v : c) v *= s;
        return FieldElement(field_, std::move(c));
    }

    FieldElement operator+(const Rat& s) const {
        std::vector<Rat> c(coords_);
        c[0] += s;
        return FieldElement(field_, std::move(c));
    }

    FieldElement operator-(const Rat& s) const { return *this + (-s); }

    /// Multiplicative inverse via the extended Euclidean algorithm in Q[x]
    /// modulo the (irreducible) field polynomial.
    FieldElement inverse() const {
        if (is_zero()) throw division_by_zero_error();
        QPoly a = to_qpoly(field_->minpoly());
        QPoly b = as_poly();
        QPoly t0, t1 = QPoly::constant(Rat(1));
        QPoly r0 = a, r1 = b;
        while (!r1.is_zero()) {
            auto [q, r] = divmod(r0, r1);
            QPoly t2 = t0 - q * t1;
            r0 = r1;
            r1 = r;
            t0 = t1;
            t1 = t2;
        }
        // r0 = gcd = nonzero constant (minpoly irreducible, b != 0)
        if (r0.degree() != 0) throw error("InternalError", "inverse: gcd not constant");
        Rat inv_c = Rat(1) / r0[0];
        QPoly t = t0 * inv_c;
        std::vector<Rat> c(static_cast<std::size_t>(field_->degree()), Rat(0));
        for (std::size_t i = 0; i < c.size() && i < t.coeffs().size(); ++i) c[i] = t.coeffs()[i];
        return FieldElement(field_, std::move(c));
    }

    FieldElement pow(unsigned long e) const {
        FieldElement acc = one(field_);
        FieldElement base = *this;
        while (e) {
            if (e & 1) acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        return acc;
    }

    /// Certified enclosure of the image under embedding i.
    RatInterval eval_embedding(std::size_t i, unsigned bits) const {
        RatInterval root = field_->embeddings()[i].refine_to(bits);
        return eval_interval(as_poly(), root);
    }

    /// Exact sign of the image under embedding i.
    int sign_at(std::size_t i) const {
        if (is_zero()) return 0;
        if (is_rational()) {
            const Rat& v = coords_[0];
            return v > 0 ? 1 : (v < 0 ? -1 : 0);
        }
        unsigned bits = 32;
        for (;;) {
            RatInterval iv = eval_embedding(i, bits);
            if (auto s = iv.sign(); s && *s != 0) return *s;
            if (iv.lo == iv.hi && iv.lo == 0) {
                // exact zero value at this embedding is impossible for a
                // nonzero field element, but a point interval can say so
                throw error("InternalError", "nonzero element evaluates to zero");
            }
            bits *= 2;
        }
    }

    std::string str() const {
        std::string s = "[";
        for (std::size_t i = 0; i < coords_.size(); ++i) {
            if (i) s += ", ";
            s += to_string(coords_[i]);
        }
        return s + "]";
    }

private:
    void check_same(const FieldElement& o) const {
        if (!field_->same_field(*o.field_)) throw field_mismatch_error();
    }

    static std::vector<Rat> mul_raw(const std::vector<Rat>& a, const std::vector<Rat>& b) {
        std::vector<Rat> r(a.size() + b.size() - 1, Rat(0));
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
        }
        return r;
    }

    static std::vector<Rat> reduce(const FieldPtr& field, std::vector<Rat> r) {
        const ZPoly& m = field->minpoly();
        long d = field->degree();
        for (long k = static_cast<long>(r.size()) - 1; k >= d; --k) {
            Rat top = r[static_cast<std::size_t>(k)];
            if (top == 0) continue;
            r[static_cast<std::size_t>(k)] = 0;
            for (long j = 0; j < d; ++j)
                r[static_cast<std::size_t>(k - d + j)] -= top * Rat(m[static_cast<std::size_t>(j)]);
        }
        r.resize(static_cast<std::size_t>(d));
        return r;
    }

    FieldPtr field_;
    std::vector<Rat> coords_;
};

inline FieldElement operator*(const Rat& s, const FieldElement& x) { return x * s; }

// ---------------------------------------------------------------------------
// element and field operations
// ---------------------------------------------------------------------------

inline FieldPtr field_create(const ZPoly& minpoly) { return NumberField::create(minpoly); }

enum class ElemOp { add, sub, mul, inv };

/// Enum-dispatched arithmetic (the operators are the primary surface; this
/// mirrors them for uniform driving).  `inv` ignores the second operand.
inline FieldElement elem_arith(ElemOp op, const FieldElement& x, const FieldElement& y) {
    switch (op) {
    case ElemOp::add: return x + y;
    case ElemOp::sub: return x - y;
    case ElemOp::mul: return x * y;
    case ElemOp::inv: return x.inverse();
    }
    throw out_of_range_error("bad op");
}

/// Exact trace of an element (sum over embeddings), via power sums.
inline Rat trace(const FieldElement& x) {
    Rat t(0);
    const auto& p = x.field()->power_sums();
    for (std::size_t j = 0; j < x.coords().size(); ++j) t += x.coords()[j] * Rat(p[j]);
    return t;
}

/// Exact norm: determinant of the multiplication-by-x matrix.
inline Rat norm(const FieldElement& x) {
    long d = x.field()->degree();
    // columns: coordinates of x * theta^j
    std::vector<std::vector<Rat>> m(static_cast<std::size_t>(d),
                                    std::vector<Rat>(static_cast<std::size_t>(d), Rat(0)));
    FieldElement cur = x;
    FieldElement theta = FieldElement::generator(x.field());
    for (long j = 0; j < d; ++j) {
        for (long i = 0; i < d; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = cur.coords()[static_cast<std::size_t>(i)];
        if (j + 1 < d) cur = cur * theta;
    }
    // Gaussian elimination determinant
    Rat det(1);
    for (long col = 0; col < d; ++col) {
        long piv = -1;
        for (long row = col; row < d; ++row)
            if (m[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] != 0) { piv = row; break; }
        if (piv < 0) return Rat(0);
        if (piv != col) {
            std::swap(m[static_cast<std::size_t>(piv)], m[static_cast<std::size_t>(col)]);
            det = -det;
        }
        Rat pval = m[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
        det *= pval;
        for (long row = col + 1; row < d; ++row) {
            Rat factor = m[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] / pval;
            if (factor == 0) continue;
            for (long k = col; k < d; ++k)
                m[static_cast<std::size_t>(row)][static_cast<std::size_t>(k)] -=
                    factor * m[static_cast<std::size_t>(col)][static_cast<std::size_t>(k)];
        }
    }
    return det;
}

inline std::pair<Rat, Rat> trace_norm(const FieldElement& x) { return {trace(x), norm(x)}; }

/// Strict total positivity: positive under every real embedding.
inline bool is_totally_positive(const FieldElement& x) {
    if (x.is_zero()) return false;
    long d = x.field()->degree();
    for (long i = 0; i < d; ++i)
        if (x.sign_at(static_cast<std::size_t>(i)) <= 0) return false;
    return true;
}

/// Minimal polynomial over Q, primitive integer coefficients, positive
/// leading coefficient.  Found as the first linear dependency among the
/// powers 1, x, x^2, ...
inline ZPoly minpoly_of(const FieldElement& x) {
    long d = x.field()->degree();
    // rows of the echelon basis, each paired with its expression in terms of
    // the powers of x
    std::vector<std::vector<Rat>> basis;   // reduced power vectors
    std::vector<std::vector<Rat>> combo;   // same length k+1 expressions
    std::vector<long> pivot;               // pivot column of each basis row
    FieldElement power = FieldElement::one(x.field());
    for (long k = 0; k <= d; ++k) {
        std::vector<Rat> v(power.coords());
        std::vector<Rat> expr(static_cast<std::size_t>(k + 1), Rat(0));
        expr[static_cast<std::size_t>(k)] = 1;
        // reduce against existing rows
        for (std::size_t r = 0; r < basis.size(); ++r) {
            Rat coef = v[static_cast<std::size_t>(pivot[r])];
            if (coef == 0) continue;
            for (std::size_t j = 0; j < v.size(); ++j) v[j] -= coef * basis[r][j];
            for (std::size_t j = 0; j < combo[r].size(); ++j) expr[j] -= coef * combo[r][j];
        }
        long piv = -1;
        for (long j = 0; j < d; ++j)
            if (v[static_cast<std::size_t>(j)] != 0) { piv = j; break; }
        if (piv < 0) {
            // dependency found: expr gives the minimal polynomial
            return primitive_part(QPoly(std::move(expr)));
        }
        // normalize pivot to 1
        Rat pval = v[static_cast<std::size_t>(piv)];
        for (auto& t : v) t /= pval;
        for (auto& t : expr) t /= pval;
        basis.push_back(std::move(v));
        combo.push_back(std::move(expr));
        pivot.push_back(piv);
        power = power * x;
    }
    throw error("InternalError", "minpoly_of: no dependency up to field degree");
}

/// Integral over Z iff the minimal polynomial is monic.
inline bool is_integral(const FieldElement& x) {
    ZPoly m = minpoly_of(x);
    return m.leading() == 1;
}

/**
 * Compare house(x) = max |conjugate of x| with a rational r.  Fully
 * symbolic: EQ iff r or -r is a root of the minimal polynomial and no root
 * lies outside [-r, r]; the root counts come from Sturm sequences.
 */
inline Ordering3 house_compare(const FieldElement& x, const Rat& r) {
    if (x.is_zero()) {
        if (r > 0) return Ordering3::LT;
        if (r == 0) return Ordering3::EQ;
        return Ordering3::GT;
    }
    if (r < 0) return Ordering3::GT;
    ZPoly m = minpoly_of(x);
    bool boundary = (r != 0) && (m.eval(r) == 0 || m.eval(Rat(-r)) == 0);
    SturmSequence sturm(m);
    Rat bound = cauchy_root_bound(m);
    if (bound <= r) bound = r + 1;
    int above = sturm.count_roots(r, bound);
    int below_incl = sturm.count_roots(-bound, -r);
    if (m.eval(Rat(-r)) == 0) below_incl -= 1;
    if (above + below_incl > 0) return Ordering3::GT;
    return boundary ? Ordering3::EQ : Ordering3::LT;
}

inline Ordering3 house_compare_minpoly(const ZPoly& m_primitive, const Rat& r) {
    // house of an algebraic number given by its (squarefree) minimal
    // polynomial; shared by the AlgebraicReal overload
    if (r < 0) return Ordering3::GT;
    ZPoly m = primitive_part(m_primitive);
    if (m.degree() == 1) {
        Rat v(-m[0], m[1]);
        v.canonicalize();
        Rat a = abs(v);
        return a < r ? Ordering3::LT : (a == r ? Ordering3::EQ : Ordering3::GT);
    }
    bool boundary = (r != 0) && (m.eval(r) == 0 || m.eval(Rat(-r)) == 0);
    SturmSequence sturm(m);
    Rat bound = cauchy_root_bound(m);
    if (bound <= r) bound = r + 1;
    int above = sturm.count_roots(r, bound);
    int below_incl = sturm.count_roots(-bound, -r);
    if (m.eval(Rat(-r)) == 0) below_incl -= 1;
    if (above + below_incl > 0) return Ordering3::GT;
    return boundary ? Ordering3::EQ : Ordering3::LT;
}

namespace detail {

inline RatInterval divide(const RatInterval& a, const RatInterval& b) {
    // b certified nonzero by the caller
    Rat i1 = a.lo / b.lo, i2 = a.lo / b.hi, i3 = a.hi / b.lo, i4 = a.hi / b.hi;
    Rat mn = i1, mx = i1;
    for (const Rat& v : {i2, i3, i4}) {
        if (v < mn) mn = v;
        if (v > mx) mx = v;
    }
    return {mn, mx};
}

/// Simplest rational (smallest denominator, then smallest magnitude) in the
/// closed interval [lo, hi]; Stern-Brocot / continued-fraction walk.
inline Rat simplest_rational_in(Rat lo, Rat hi) {
    if (lo > hi) std::swap(lo, hi);
    if (lo <= 0 && 0 <= hi) return Rat(0);
    bool neg = false;
    if (hi < 0) {
        neg = true;
        Rat t = lo;
        lo = -hi;
        hi = -t;
    }
    // 0 < lo <= hi: walk the continued fraction of the interval
    Rat num0(0), den0(1), num1(1), den1(0); // convergent state
    Rat a = lo, b = hi;
    Rat result;
    for (;;) {
        Int fl = floor_rat(a);
        if (Rat(fl) == a || Rat(fl) + 1 <= b) {
            // integer available in [a, b]
            Rat pick = (Rat(fl) == a) ? Rat(fl) : Rat(fl + 1);
            // fold back through the stored partial quotients
            // state: value = (num1 * t + num0) / (den1 * t + den0) at t = pick
            Rat v = (Rat(num1) * pick + Rat(num0)) / (Rat(den1) * pick + Rat(den0));
            result = v;
            break;
        }
        // a, b in (fl, fl+1): recurse on reciprocals
        Rat na = Rat(1) / (b - Rat(fl));
        Rat nb = Rat(1) / (a - Rat(fl));
        // update convergent state with partial quotient fl
        Rat n2 = Rat(num1) * Rat(fl) + Rat(num0);
        Rat d2 = Rat(den1) * Rat(fl) + Rat(den0);
        num0 = num1; den0 = den1;
        num1 = n2; den1 = d2;
        a = na;
        b = nb;
    }
    result.canonicalize();
    return neg ? Rat(-result) : result;
}

/// Interval Gaussian elimination; nullopt when a pivot cannot be certified
/// nonzero at the current precision.
inline std::optional<std::vector<RatInterval>> solve_interval_system(
    std::vector<std::vector<RatInterval>> a, std::vector<RatInterval> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = n;
        for (std::size_t row = col; row < n; ++row)
            if (!a[row][col].contains_zero()) { piv = row; break; }
        if (piv == n) return std::nullopt;
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (std::size_t row = col + 1; row < n; ++row) {
            if (a[row][col].lo == 0 && a[row][col].hi == 0) continue;
            RatInterval factor = divide(a[row][col], a[col][col]);
            for (std::size_t k = col; k < n; ++k)
                a[row][k] = a[row][k] - factor * a[col][k];
            b[row] = b[row] - factor * b[col];
        }
    }
    std::vector<RatInterval> x(n, RatInterval(Rat(0)));
    for (std::size_t i = n; i-- > 0;) {
        RatInterval acc = b[i];
        for (std::size_t k = i + 1; k < n; ++k) acc = acc - a[i][k] * x[k];
        x[i] = divide(acc, a[i][i]);
    }
    return x;
}

} // namespace detail

/**
 * Exact square root in the field: returns y with y * y = x when one exists.
 *
 * The search runs over sign patterns of the conjugates: a square root y has
 * sigma_i(y) = +-sqrt(sigma_i(x)), and its power-basis coordinates are
 * reconstructed from certified interval data with a denominator bound
 * derived from disc(minpoly).  Each sign pattern either yields a verified
 * root or is excluded rigorously, so emptiness is a certificate.  The sign
 * of the result is normalized to be positive at the default embedding.
 */
inline std::optional<FieldElement> sqrt_in_field(const FieldElement& x) {
    const FieldPtr& K = x.field();
    long d = K->degree();
    if (x.is_zero()) return FieldElement::zero(K);
    if (!is_totally_positive(x)) throw not_totally_nonnegative_error();

    if (d == 1) {
        auto r = rational_sqrt(x.coords()[0]);
        if (!r) return std::nullopt;
        return FieldElement::from_rational(K, *r);
    }

    // scale to an algebraic integer: q^2 * x has coordinates in Z
    Int q = 1;
    for (const auto& c : x.coords()) q = lcm(q, c.get_den());
    FieldElement z = x * Rat(q * q);
    const Int& B = K->denominator_bound();
    Rat unique_width = Rat(1, B * B * 2);

    std::size_t dd = static_cast<std::size_t>(d);
    std::size_t def = K->default_embedding();

    for (unsigned bits = 96;; bits *= 2) {
        // certified conjugate data
        std::vector<RatInterval> zvals(dd), svals(dd);
        bool need_more = false;
        for (std::size_t i = 0; i < dd; ++i) {
            zvals[i] = z.eval_embedding(i, bits);
            if (zvals[i].lo <= 0) { need_more = true; break; }
            svals[i] = sqrt_interval(zvals[i], bits);
        }
        if (need_more) continue;

        std::vector<std::vector<RatInterval>> vand(dd, std::vector<RatInterval>(dd));
        for (std::size_t i = 0; i < dd; ++i) {
            RatInterval root = K->embeddings()[i].refine_to(bits);
            RatInterval p(Rat(1));
            for (std::size_t j = 0; j < dd; ++j) {
                vand[i][j] = p;
                p = p * root;
            }
        }

        // DFS over sign choices; the default embedding is pinned positive.
        bool inconclusive = false;
        std::optional<FieldElement> found;
        std::vector<int> signs(dd, 0);
        std::vector<Rat> suffix_bound(dd + 1, Rat(0));
        for (std::size_t i = dd; i-- > 0;)
            suffix_bound[i] = suffix_bound[i + 1] + svals[i].max_abs();

        auto reconstruct = [&](const std::vector<int>& eps) {
            std::vector<RatInterval> target(dd);
            for (std::size_t i = 0; i < dd; ++i)
                target[i] = eps[i] > 0 ? svals[i] : -svals[i];
            auto sol = detail::solve_interval_system(vand, target);
            if (!sol) { inconclusive = true; return; }
            std::vector<Rat> cand(dd);
            bool all_unique = true;
            for (std::size_t j = 0; j < dd; ++j) {
                const RatInterval& cj = (*sol)[j];
                if (cj.width() >= unique_width) all_unique = false;
                Rat c = detail::simplest_rational_in(cj.lo, cj.hi);
                if (c.get_den() > B) return; // no bounded-denominator rational here
                cand[j] = c;
            }
            FieldElement y(K, std::move(cand));
            if (y * y == z) { found = y; return; }
            // the candidate was the only admissible one per slot exactly when
            // the interval widths guarantee uniqueness
            if (!all_unique) inconclusive = true;
        };

        // trace pruning: sum of eps_i * s_i must be able to hit an integer
        auto dfs = [&](auto&& self, std::size_t idx, RatInterval partial) -> void {
            if (found) return;
            RatInterval window = partial + RatInterval(-suffix_bound[idx], suffix_bound[idx]);
            if (ceil_rat(window.lo) > floor_rat(window.hi)) return;
            if (idx == dd) {
                reconstruct(signs);
                return;
            }
            if (idx == def) {
                signs[idx] = 1;
                self(self, idx + 1, partial + svals[idx]);
                return;
            }
            for (int s : {1, -1}) {
                signs[idx] = s;
                self(self, idx + 1, partial + (s > 0 ? svals[idx] : -svals[idx]));
                if (found) return;
            }
        };
        dfs(dfs, 0, RatInterval(Rat(0)));

        if (found) {
            FieldElement y = *found * Rat(Int(1), q);
            if (y.sign_at(def) < 0) y = -y;
            return y;
        }
        if (!inconclusive) return std::nullopt;
    }
}

} // namespace totreal
