#pragma once

#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "schur/ring.hpp"

namespace schur {

/// Dense matrix over a single ring spec, row-major.  Row labels describe the
/// codomain basis and column labels the domain basis; both are optional
/// display metadata and are ignored by comparisons.
class ExactMatrix {
public:
    ExactMatrix(RingSpecPtr spec, size_t rows, size_t cols);

    static ExactMatrix identity(RingSpecPtr spec, size_t n);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    const RingSpecPtr& spec() const { return spec_; }

    RingElement& at(size_t i, size_t j) { return entries_[i * cols_ + j]; }
    const RingElement& at(size_t i, size_t j) const { return entries_[i * cols_ + j]; }

    std::vector<std::string> row_labels;
    std::vector<std::string> col_labels;

    friend bool operator==(const ExactMatrix& a, const ExactMatrix& b);
    friend bool operator!=(const ExactMatrix& a, const ExactMatrix& b) { return !(a == b); }

private:
    RingSpecPtr spec_;
    size_t rows_, cols_;
    std::vector<RingElement> entries_;
};

ExactMatrix matmul(const ExactMatrix& a, const ExactMatrix& b);
ExactMatrix add(const ExactMatrix& a, const ExactMatrix& b);
ExactMatrix sub(const ExactMatrix& a, const ExactMatrix& b);
ExactMatrix scale(const RingElement& c, const ExactMatrix& a);
ExactMatrix negate(const ExactMatrix& a);
ExactMatrix transpose(const ExactMatrix& a);
ExactMatrix hstack(const ExactMatrix& a, const ExactMatrix& b);
ExactMatrix vstack(const ExactMatrix& a, const ExactMatrix& b);
bool is_zero_matrix(const ExactMatrix& a);

/// Fraction-free Bareiss elimination; exact over every supported ring
/// because the interior divisions are always exact.  The empty matrix has
/// determinant one.
RingElement determinant(const ExactMatrix& a);

/// Rank of the matrix viewed over the rationals.  Polynomial specs are
/// rejected.
size_t rational_rank(const ExactMatrix& a);

/// Basis of the right kernel over the rationals, one primitive integer
/// vector per free column, deterministic order.  Entries live in Q.
std::vector<std::vector<RingElement>> rational_kernel_basis(const ExactMatrix& a);

/// Nonzero elementary divisors d1 | d2 | ... of an integer matrix.
std::vector<mpz_class> smith_elementary_divisors(const ExactMatrix& a);

/// Returns c when a == c * identity; for the 0x0 matrix returns one.
std::optional<RingElement> scalar_multiple_of_identity(const ExactMatrix& a);

/// Entry-wise re-interpretation in another ring; throws NotDivisibleError
/// when an entry does not embed.
ExactMatrix convert(const ExactMatrix& a, RingSpecPtr target);

/// Inverse over the rationals, or nullopt when singular.
std::optional<ExactMatrix> rational_inverse(const ExactMatrix& a);

/// True when every column of b lies in the column span of a over Q.
bool columns_in_span(const ExactMatrix& a, const ExactMatrix& b);

nlohmann::ordered_json matrix_to_json(const ExactMatrix& a);
ExactMatrix matrix_from_json(const nlohmann::json& j);

/// Convenience for building matrices from scalar strings.
ExactMatrix matrix_from_strings(const RingSpecPtr& spec, const std::vector<std::vector<std::string>>& rows);

}  // namespace schur
