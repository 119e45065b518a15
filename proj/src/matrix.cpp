#include "schur/matrix.hpp"

#include <algorithm>
#include <numeric>

namespace schur {

ExactMatrix::ExactMatrix(RingSpecPtr spec, size_t rows, size_t cols)
    : spec_(std::move(spec)), rows_(rows), cols_(cols) {
    entries_.assign(rows_ * cols_, RingElement::zero(spec_));
}

ExactMatrix ExactMatrix::identity(RingSpecPtr spec, size_t n) {
    ExactMatrix m(spec, n, n);
    const RingElement one = RingElement::one(std::move(spec));
    for (size_t i = 0; i < n; ++i) m.at(i, i) = one;
    return m;
}

bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
    if (!same_spec(a.spec_, b.spec_) || a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    return a.entries_ == b.entries_;
}

namespace {

void require_same_shape(const ExactMatrix& a, const ExactMatrix& b) {
    if (!same_spec(a.spec(), b.spec())) throw SpecMismatchError("matrix ring mismatch");
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix shape mismatch");
}

}  // namespace

ExactMatrix matmul(const ExactMatrix& a, const ExactMatrix& b) {
    if (!same_spec(a.spec(), b.spec())) throw SpecMismatchError("matrix ring mismatch");
    if (a.cols() != b.rows()) throw std::invalid_argument("matmul shape mismatch");
    ExactMatrix out(a.spec(), a.rows(), b.cols());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t k = 0; k < a.cols(); ++k) {
            const RingElement& aik = a.at(i, k);
            if (aik.is_zero()) continue;
            for (size_t j = 0; j < b.cols(); ++j) {
                const RingElement& bkj = b.at(k, j);
                if (bkj.is_zero()) continue;
                out.at(i, j) += aik * bkj;
            }
        }
    out.row_labels = a.row_labels;
    out.col_labels = b.col_labels;
    return out;
}

ExactMatrix add(const ExactMatrix& a, const ExactMatrix& b) {
    require_same_shape(a, b);
    ExactMatrix out = a;
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) out.at(i, j) += b.at(i, j);
    return out;
}

ExactMatrix sub(const ExactMatrix& a, const ExactMatrix& b) {
    require_same_shape(a, b);
    ExactMatrix out = a;
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) out.at(i, j) -= b.at(i, j);
    return out;
}

ExactMatrix scale(const RingElement& c, const ExactMatrix& a) {
    ExactMatrix out = a;
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) out.at(i, j) *= c;
    return out;
}

ExactMatrix negate(const ExactMatrix& a) {
    ExactMatrix out = a;
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) out.at(i, j) = -out.at(i, j);
    return out;
}

ExactMatrix transpose(const ExactMatrix& a) {
    ExactMatrix out(a.spec(), a.cols(), a.rows());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) out.at(j, i) = a.at(i, j);
    out.row_labels = a.col_labels;
    out.col_labels = a.row_labels;
    return out;
}

ExactMatrix hstack(const ExactMatrix& a, const ExactMatrix& b) {
    if (!same_spec(a.spec(), b.spec())) throw SpecMismatchError("matrix ring mismatch");
    if (a.rows() != b.rows()) throw std::invalid_argument("hstack row mismatch");
    ExactMatrix out(a.spec(), a.rows(), a.cols() + b.cols());
    for (size_t i = 0; i < a.rows(); ++i) {
        for (size_t j = 0; j < a.cols(); ++j) out.at(i, j) = a.at(i, j);
        for (size_t j = 0; j < b.cols(); ++j) out.at(i, a.cols() + j) = b.at(i, j);
    }
    return out;
}

ExactMatrix vstack(const ExactMatrix& a, const ExactMatrix& b) {
    if (!same_spec(a.spec(), b.spec())) throw SpecMismatchError("matrix ring mismatch");
    if (a.cols() != b.cols()) throw std::invalid_argument("vstack column mismatch");
    ExactMatrix out(a.spec(), a.rows() + b.rows(), a.cols());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) out.at(i, j) = a.at(i, j);
    for (size_t i = 0; i < b.rows(); ++i)
        for (size_t j = 0; j < b.cols(); ++j) out.at(a.rows() + i, j) = b.at(i, j);
    return out;
}

bool is_zero_matrix(const ExactMatrix& a) {
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j)
            if (!a.at(i, j).is_zero()) return false;
    return true;
}

RingElement determinant(const ExactMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("determinant of a non-square matrix");
    const size_t n = a.rows();
    if (n == 0) return RingElement::one(a.spec());
    ExactMatrix m = a;
    RingElement prev = RingElement::one(a.spec());
    bool negate_det = false;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m.at(k, k).is_zero()) {
            size_t pivot = k;
            while (pivot < n && m.at(pivot, k).is_zero()) ++pivot;
            if (pivot == n) return RingElement::zero(a.spec());
            for (size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(pivot, j));
            negate_det = !negate_det;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j)
                m.at(i, j) = exact_div(m.at(k, k) * m.at(i, j) - m.at(i, k) * m.at(k, j), prev);
            m.at(i, k) = RingElement::zero(a.spec());
        }
        prev = m.at(k, k);
    }
    RingElement det = m.at(n - 1, n - 1);
    return negate_det ? -det : det;
}

namespace {

// Row echelon form over mpq.  Returns pivot column indices; rows are reduced
// so each pivot is 1 and is the only nonzero entry in its column.
std::vector<size_t> reduced_echelon(std::vector<std::vector<mpq_class>>& m) {
    std::vector<size_t> pivots;
    if (m.empty()) return pivots;
    const size_t rows = m.size(), cols = m[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[r], m[p]);
        mpq_class inv = 1 / m[r][c];
        for (size_t j = c; j < cols; ++j) m[r][j] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            mpq_class f = m[i][c];
            for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::vector<std::vector<mpq_class>> to_rational_rows(const ExactMatrix& a) {
    std::vector<std::vector<mpq_class>> m(a.rows(), std::vector<mpq_class>(a.cols()));
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) m[i][j] = a.at(i, j).to_rational();
    return m;
}

}  // namespace

size_t rational_rank(const ExactMatrix& a) {
    if (a.spec()->kind() == RingKind::polynomials)
        throw std::invalid_argument("rational rank over a polynomial ring");
    auto m = to_rational_rows(a);
    return reduced_echelon(m).size();
}

std::vector<std::vector<RingElement>> rational_kernel_basis(const ExactMatrix& a) {
    if (a.spec()->kind() == RingKind::polynomials)
        throw std::invalid_argument("rational kernel over a polynomial ring");
    auto Q = RingSpec::rationals();
    auto m = to_rational_rows(a);
    auto pivots = reduced_echelon(m);
    std::vector<bool> is_pivot(a.cols(), false);
    for (size_t c : pivots) is_pivot[c] = true;

    std::vector<std::vector<RingElement>> basis;
    for (size_t free_col = 0; free_col < a.cols(); ++free_col) {
        if (is_pivot[free_col]) continue;
        std::vector<mpq_class> v(a.cols(), mpq_class(0));
        v[free_col] = 1;
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free_col];
        // Clear denominators and divide by the content to get a primitive
        // integer vector; the free coordinate stays positive.
        mpz_class lcm = 1;
        for (const auto& q : v) {
            mpz_class l;
            mpz_lcm(l.get_mpz_t(), lcm.get_mpz_t(), q.get_den().get_mpz_t());
            lcm = l;
        }
        std::vector<mpz_class> w(a.cols());
        mpz_class content = 0;
        for (size_t j = 0; j < v.size(); ++j) {
            mpq_class scaled = v[j] * mpq_class(lcm);
            w[j] = scaled.get_num();
            mpz_class g;
            mpz_gcd(g.get_mpz_t(), content.get_mpz_t(), w[j].get_mpz_t());
            content = g;
        }
        std::vector<RingElement> out;
        out.reserve(a.cols());
        for (auto& z : w) out.push_back(RingElement::from_mpz(Q, z / content));
        basis.push_back(std::move(out));
    }
    return basis;
}

std::vector<mpz_class> smith_elementary_divisors(const ExactMatrix& a) {
    if (a.spec()->kind() != RingKind::integers)
        throw std::invalid_argument("elementary divisors need an integer matrix");
    const size_t rows = a.rows(), cols = a.cols();
    std::vector<std::vector<mpz_class>> m(rows, std::vector<mpz_class>(cols));
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j) m[i][j] = a.at(i, j).integer_value();

    std::vector<mpz_class> divisors;
    size_t t = 0;
    while (t < rows && t < cols) {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        size_t bi = t, bj = t;
        bool found = false;
        for (size_t i = t; i < rows; ++i)
            for (size_t j = t; j < cols; ++j) {
                if (m[i][j] == 0) continue;
                if (!found || abs(m[i][j]) < abs(m[bi][bj])) {
                    bi = i;
                    bj = j;
                    found = true;
                }
            }
        if (!found) break;
        std::swap(m[t], m[bi]);
        for (size_t i = t; i < rows; ++i) std::swap(m[i][t], m[i][bj]);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (size_t i = t + 1; i < rows; ++i) {
                if (m[i][t] == 0) continue;
                mpz_class q = m[i][t] / m[t][t];  // truncated
                for (size_t j = t; j < cols; ++j) m[i][j] -= q * m[t][j];
                if (m[i][t] != 0) {
                    std::swap(m[t], m[i]);  // strictly smaller pivot, restart
                    clean = false;
                }
            }
            if (!clean) continue;
            for (size_t j = t + 1; j < cols; ++j) {
                if (m[t][j] == 0) continue;
                mpz_class q = m[t][j] / m[t][t];
                for (size_t i = t; i < rows; ++i) m[i][j] -= q * m[i][t];
                if (m[t][j] != 0) {
                    for (size_t i = t; i < rows; ++i) std::swap(m[i][t], m[i][j]);
                    clean = false;
                }
            }
            if (!clean) continue;
            // The pivot must divide the whole trailing block.
            for (size_t i = t + 1; i < rows && clean; ++i)
                for (size_t j = t + 1; j < cols && clean; ++j)
                    if (m[i][j] % m[t][t] != 0) {
                        for (size_t c = t; c < cols; ++c) m[t][c] += m[i][c];
                        clean = false;
                    }
        }
        divisors.push_back(abs(m[t][t]));
        ++t;
    }
    return divisors;
}

std::optional<RingElement> scalar_multiple_of_identity(const ExactMatrix& a) {
    if (a.rows() != a.cols()) return std::nullopt;
    if (a.rows() == 0) return RingElement::one(a.spec());
    const RingElement& c = a.at(0, 0);
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) {
            if (i == j ? (a.at(i, j) != c) : !a.at(i, j).is_zero()) return std::nullopt;
        }
    return c;
}

ExactMatrix convert(const ExactMatrix& a, RingSpecPtr target) {
    if (same_spec(a.spec(), target)) return a;
    ExactMatrix out(target, a.rows(), a.cols());
    const bool source_poly = a.spec()->kind() == RingKind::polynomials;
    const bool target_poly = target->kind() == RingKind::polynomials;
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) {
            if (source_poly || target_poly) {
                mpq_class q = a.at(i, j).to_rational();  // throws unless constant
                if (q.get_den() != 1 && target_poly) throw NotDivisibleError("fraction in polynomial ring");
                out.at(i, j) = target_poly ? RingElement::from_mpz(target, q.get_num())
                                           : RingElement::from_mpq(target, q);
            } else {
                out.at(i, j) = RingElement::from_mpq(target, a.at(i, j).to_rational());
            }
        }
    out.row_labels = a.row_labels;
    out.col_labels = a.col_labels;
    return out;
}

std::optional<ExactMatrix> rational_inverse(const ExactMatrix& a) {
    if (a.rows() != a.cols()) return std::nullopt;
    const size_t n = a.rows();
    auto m = to_rational_rows(a);
    for (size_t i = 0; i < n; ++i) {
        m[i].resize(2 * n, mpq_class(0));
        m[i][n + i] = 1;
    }
    auto pivots = reduced_echelon(m);
    if (pivots.size() != n || !std::all_of(pivots.begin(), pivots.end(), [&](size_t c) { return c < n; }))
        return std::nullopt;
    ExactMatrix out(RingSpec::rationals(), n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) out.at(i, j) = RingElement::from_mpq(RingSpec::rationals(), m[i][n + j]);
    return out;
}

bool columns_in_span(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("span check row mismatch");
    return rational_rank(a) == rational_rank(hstack(a, b));
}

nlohmann::ordered_json matrix_to_json(const ExactMatrix& a) {
    nlohmann::ordered_json j;
    j["ring"] = a.spec()->to_string();
    j["rows"] = a.rows();
    j["cols"] = a.cols();
    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
    for (size_t i = 0; i < a.rows(); ++i) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (size_t jj = 0; jj < a.cols(); ++jj) row.push_back(a.at(i, jj).to_string());
        entries.push_back(std::move(row));
    }
    j["entries"] = std::move(entries);
    if (!a.row_labels.empty()) j["row_labels"] = a.row_labels;
    if (!a.col_labels.empty()) j["col_labels"] = a.col_labels;
    return j;
}

ExactMatrix matrix_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("ring") || !j.contains("rows") || !j.contains("cols") ||
        !j.contains("entries"))
        throw std::invalid_argument("matrix JSON needs ring, rows, cols and entries");
    auto spec = RingSpec::parse(j.at("ring").get<std::string>());
    const size_t rows = j.at("rows").get<size_t>();
    const size_t cols = j.at("cols").get<size_t>();
    const auto& entries = j.at("entries");
    if (!entries.is_array() || entries.size() != rows) throw std::invalid_argument("entry row count mismatch");
    ExactMatrix out(spec, rows, cols);
    for (size_t i = 0; i < rows; ++i) {
        const auto& row = entries.at(i);
        if (!row.is_array() || row.size() != cols) throw std::invalid_argument("entry column count mismatch");
        for (size_t c = 0; c < cols; ++c) out.at(i, c) = parse_scalar(row.at(c).get<std::string>(), spec);
    }
    if (j.contains("row_labels")) out.row_labels = j.at("row_labels").get<std::vector<std::string>>();
    if (j.contains("col_labels")) out.col_labels = j.at("col_labels").get<std::vector<std::string>>();
    return out;
}

ExactMatrix matrix_from_strings(const RingSpecPtr& spec, const std::vector<std::vector<std::string>>& rows) {
    const size_t r = rows.size();
    const size_t c = r == 0 ? 0 : rows[0].size();
    ExactMatrix out(spec, r, c);
    for (size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c) throw std::invalid_argument("ragged rows");
        for (size_t j = 0; j < c; ++j) out.at(i, j) = parse_scalar(rows[i][j], spec);
    }
    return out;
}

}  // namespace schur
