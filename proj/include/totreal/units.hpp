#pragma once

#include <utility>
#include <vector>

#include "totreal/numberfield.hpp"

namespace totreal {

enum class RingKind { Z_sqrtD, Z_half };

/// Real quadratic field Q(sqrt D), presented so that the power basis spans
/// the full ring of integers: theta = (1+sqrt D)/2 when D = 1 mod 4,
/// theta = sqrt D otherwise.
struct QuadraticFieldDesc {
    long D = 0;
    RingKind ring_kind = RingKind::Z_sqrtD;
    FieldPtr field;
};

inline QuadraticFieldDesc quadratic_field(long D) {
    if (D <= 1) throw not_squarefree_error("D must exceed 1");
    if (!is_squarefree(Int(D))) throw not_squarefree_error(std::to_string(D));
    QuadraticFieldDesc desc;
    desc.D = D;
    if (D % 4 == 1) {
        desc.ring_kind = RingKind::Z_half;
        // x^2 - x - (D-1)/4
        desc.field = NumberField::create_trusted(ZPoly({Int(-(D - 1) / 4), Int(-1), Int(1)}));
    } else {
        desc.ring_kind = RingKind::Z_sqrtD;
        desc.field = NumberField::create_trusted(ZPoly({Int(-D), Int(0), Int(1)}));
    }
    return desc;
}

/// sqrt(D) as an element of the field of `desc`.
inline FieldElement sqrt_d_element(const QuadraticFieldDesc& desc) {
    FieldElement theta = FieldElement::generator(desc.field);
    if (desc.ring_kind == RingKind::Z_half) return theta * Rat(2) - Rat(1); // 2theta - 1
    return theta;
}

/**
 * Fundamental unit epsilon > 1 of the ring of integers of Q(sqrt D),
 * computed from the periodic continued fraction of theta (sqrt D, or
 * (1+sqrt D)/2 for D = 1 mod 4).  Returns the unit and its norm (+1/-1).
 */
inline std::pair<FieldElement, int> fundamental_unit(long D) {
    QuadraticFieldDesc desc = quadratic_field(D);
    const FieldPtr& K = desc.field;
    // theta = (P0 + sqrt D) / Q0
    Int P = (desc.ring_kind == RingKind::Z_half) ? 1 : 0;
    Int Q = (desc.ring_kind == RingKind::Z_half) ? 2 : 1;
    Int sqrtD = isqrt(Int(D));
    Int p0 = 1, q0 = 0; // convergents p_{-1}/q_{-1}
    Int p1, q1;
    // first partial quotient a0 = floor(theta)
    Int a = floor_div(P + sqrtD, Q);
    p1 = a;
    q1 = 1;
    FieldElement theta = FieldElement::generator(K);
    const Int trace_theta = (desc.ring_kind == RingKind::Z_half) ? 1 : 0;
    for (long iter = 0; iter < 1000000; ++iter) {
        // candidate eta = p - q * conj(theta) = (p - q*tr) + q*theta
        FieldElement eta = FieldElement(
            K, {Rat(p1 - q1 * trace_theta), Rat(q1)});
        Rat n = norm(eta);
        if ((n == 1 || n == -1) && !(eta == FieldElement::one(K)) &&
            !(eta == -FieldElement::one(K))) {
            // epsilon > 1 at the default (largest-root) embedding
            if ((eta - Rat(1)).sign_at(K->default_embedding()) <= 0)
                throw error("InternalError", "fundamental_unit: candidate not > 1");
            return {eta, n == 1 ? 1 : -1};
        }
        // continued fraction step for (P + sqrt D)/Q
        P = a * Q - P;
        Q = (Int(D) - P * P) / Q;
        a = floor_div(P + sqrtD, Q);
        Int p2 = a * p1 + p0, q2 = a * q1 + q0;
        p0 = p1; q0 = q1;
        p1 = p2; q1 = q2;
    }
    throw error("InternalError", "fundamental_unit: period not found");
}

/// Totally positive units modulo squares of units, with representatives.
struct UnitClassReport {
    QuadraticFieldDesc field_desc;
    FieldElement fundamental_unit;
    int norm = 1;               // +1 or -1
    int class_count = 1;        // 1 or 2
    std::vector<FieldElement> representatives; // first element is 1
};

/**
 * O^{x,+} / O^{x2} for the real quadratic field of D.  With N(eps) = -1
 * the totally positive units are exactly the squares, so the group is
 * trivial; with N(eps) = +1 the classes are {1, eps}.  Every claim is
 * re-verified exactly (positivity, unit norms, non-squareness).
 */
inline UnitClassReport tp_unit_square_classes(long D) {
    auto [eps, n] = fundamental_unit(D);
    const FieldPtr& K = eps.field();
    UnitClassReport report;
    report.field_desc = quadratic_field(D);
    report.fundamental_unit = eps;
    report.norm = n;
    Rat nrm = norm(eps);
    if (abs(nrm) != 1 || !is_integral(eps))
        throw error("InternalError", "fundamental unit is not a unit");
    if (n == -1) {
        report.class_count = 1;
        report.representatives = {FieldElement::one(K)};
        // eps^2 must be the smallest totally positive unit > 1 and a square
        if (!is_totally_positive(eps * eps))
            throw error("InternalError", "eps^2 not totally positive");
    } else {
        report.class_count = 2;
        report.representatives = {FieldElement::one(K), eps};
        if (!is_totally_positive(eps))
            throw error("InternalError", "norm +1 fundamental unit must be totally positive");
        if (sqrt_in_field(eps))
            throw error("InternalError", "fundamental unit cannot be a square");
    }
    return report;
}

/// Validation for externally supplied representative lists (higher-degree
/// unit groups are accepted as data, never computed here).
inline void validate_unit_class_report(const UnitClassReport& report) {
    const auto& reps = report.representatives;
    if (reps.empty() || !(reps[0] == FieldElement::one(reps[0].field())))
        throw error("InvalidReport", "first representative must be 1");
    for (const auto& r : reps) {
        if (!is_totally_positive(r)) throw error("InvalidReport", "representative not totally positive");
        if (!is_integral(r) || abs(norm(r)) != 1)
            throw error("InvalidReport", "representative not a unit");
    }
    for (std::size_t i = 0; i < reps.size(); ++i)
        for (std::size_t j = i + 1; j < reps.size(); ++j)
            if (sqrt_in_field(reps[i] * reps[j].inverse()))
                throw error("InvalidReport", "representatives share a square class");
    if (static_cast<int>(reps.size()) != report.class_count)
        throw error("InvalidReport", "class_count mismatch");
}

} // namespace totreal
