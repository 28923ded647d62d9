#pragma once

#include <stdexcept>
#include <string>

namespace totreal {

// Base class for all domain errors thrown by the library.  `code()` is a
// stable machine-readable identifier (also used by the CLI error objects).
class error : public std::runtime_error {
public:
    error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

#define TOTREAL_DEFINE_ERROR(NAME, CODE)                                   \
    class NAME : public error {                                            \
    public:                                                                \
        explicit NAME(const std::string& what = CODE)                      \
            : error(CODE, what) {}                                         \
    }

TOTREAL_DEFINE_ERROR(not_monic_error, "NotMonic");
TOTREAL_DEFINE_ERROR(not_irreducible_error, "NotIrreducible");
TOTREAL_DEFINE_ERROR(not_totally_real_error, "NotTotallyReal");
TOTREAL_DEFINE_ERROR(division_by_zero_error, "DivisionByZero");
TOTREAL_DEFINE_ERROR(field_mismatch_error, "FieldMismatch");
TOTREAL_DEFINE_ERROR(not_totally_nonnegative_error, "NotTotallyNonnegative");
TOTREAL_DEFINE_ERROR(out_of_range_error, "OutOfRange");
TOTREAL_DEFINE_ERROR(not_integral_error, "NotIntegral");
TOTREAL_DEFINE_ERROR(not_coprime_error, "NotCoprime");
TOTREAL_DEFINE_ERROR(not_squarefree_error, "NotSquarefree");
TOTREAL_DEFINE_ERROR(not_symmetric_error, "NotSymmetric");
TOTREAL_DEFINE_ERROR(diagonal_not_integral_error, "DiagonalNotIntegral");
TOTREAL_DEFINE_ERROR(offdiagonal_not_half_integral_error, "OffDiagonalNotHalfIntegral");
TOTREAL_DEFINE_ERROR(not_positive_definite_error, "NotPositiveDefinite");
TOTREAL_DEFINE_ERROR(budget_exceeded_error, "BudgetExceeded");
TOTREAL_DEFINE_ERROR(bound_violated_error, "BoundViolated");
TOTREAL_DEFINE_ERROR(proposition_violated_error, "PropositionViolated");
TOTREAL_DEFINE_ERROR(zero_vector_error, "ZeroVector");
TOTREAL_DEFINE_ERROR(non_residue_error, "NonResidue");
TOTREAL_DEFINE_ERROR(not_unit_error, "NotUnit");
TOTREAL_DEFINE_ERROR(prime_mismatch_error, "PrimeMismatch");
TOTREAL_DEFINE_ERROR(invalid_sequence_error, "InvalidSequence");
TOTREAL_DEFINE_ERROR(index_out_of_range_error, "IndexOutOfRange");

#undef TOTREAL_DEFINE_ERROR

} // namespace totreal
