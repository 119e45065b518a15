#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>

#include "schur/expr.hpp"
#include "schur/matrix.hpp"

namespace schur {

/// Permutation of positions {0..d-1}; sigma(p) is where the factor sitting at
/// position p ends up.
class Permutation {
public:
    static Permutation identity(unsigned d);
    /// Cycle given in 1-based position numbers, e.g. {2,3,4} maps 2->3->4->2.
    static Permutation cycle(unsigned d, const std::vector<unsigned>& positions_1based);
    explicit Permutation(std::vector<unsigned> images);

    unsigned size() const { return static_cast<unsigned>(map_.size()); }
    unsigned operator()(unsigned p) const { return map_[p]; }

    Permutation inverse() const;
    /// (*this) after `inner`: positions flow through inner first.
    Permutation after(const Permutation& inner) const;
    int sign() const;

    /// New tuple u with u[sigma(p)] = t[p].
    std::vector<unsigned> apply(const std::vector<unsigned>& t) const;

    friend bool operator==(const Permutation& a, const Permutation& b) { return a.map_ == b.map_; }
    friend bool operator<(const Permutation& a, const Permutation& b) { return a.map_ < b.map_; }

private:
    std::vector<unsigned> map_;
};

/// Formal integer combination of coordinate permutations of F^{⊗d}.  Every
/// lift in this project is such a sum, which keeps huge tensor powers
/// tractable: composing and applying sums never materializes an n^d matrix.
class PermutationSum {
public:
    explicit PermutationSum(unsigned d) : d_(d) {}
    static PermutationSum identity(unsigned d);
    static PermutationSum single(const Permutation& p, long coeff = 1);

    unsigned degree() const { return d_; }
    size_t term_count() const { return terms_.size(); }
    const std::map<Permutation, long>& terms() const { return terms_; }

    PermutationSum& add(const Permutation& p, long coeff);
    friend PermutationSum operator+(const PermutationSum& a, const PermutationSum& b);
    friend PermutationSum operator-(const PermutationSum& a, const PermutationSum& b);
    PermutationSum scaled(long c) const;

    /// (*this) ∘ inner as linear maps: apply inner's permutations first.
    PermutationSum after(const PermutationSum& inner) const;

    /// Dense matrix on a rank-n module; refuses oversized results.
    ExactMatrix to_matrix(unsigned n, const RingSpecPtr& spec) const;

private:
    unsigned d_;
    std::map<Permutation, long> terms_;  // nonzero coefficients only
};

/// Presentation of one construction on a rank-n module as a quotient of the
/// d-th tensor power: a projection Q (one signed label column per pure
/// tensor, or zero) and the canonical section Sec picking sorted
/// representatives.  Dense Q/Sec are materialized lazily; the compact routing
/// tables below are what the engine actually computes with.
class QuotientPresentation {
public:
    struct Route {
        int8_t sign;        // 0 when the pure tensor dies in the quotient
        std::uint32_t row;  // defined when sign != 0
    };

    QuotientPresentation(SchurExprPtr expr, unsigned n, RingSpecPtr spec);
    QuotientPresentation(const QuotientPresentation&) = delete;

    const SchurExprPtr& expr() const { return expr_; }
    unsigned n() const { return n_; }
    unsigned degree() const { return degree_; }
    const RingSpecPtr& spec() const { return spec_; }
    std::uint64_t tuple_count() const { return tuple_count_; }

    const std::vector<BasisLabel>& labels() const { return labels_; }
    const std::vector<Route>& routes() const { return routes_; }
    /// Tuple index of the canonical representative of label i.
    std::uint64_t representative(size_t i) const { return reps_[i]; }

    const ExactMatrix& Q() const;
    const ExactMatrix& Sec() const;

private:
    SchurExprPtr expr_;
    unsigned n_;
    unsigned degree_;
    RingSpecPtr spec_;
    std::uint64_t tuple_count_;
    std::vector<BasisLabel> labels_;
    std::vector<Route> routes_;
    std::vector<std::uint64_t> reps_;

    mutable std::mutex dense_mutex_;
    mutable std::optional<ExactMatrix> dense_q_;
    mutable std::optional<ExactMatrix> dense_sec_;
};

using PresentationPtr = std::shared_ptr<const QuotientPresentation>;

/// Memoized; the cache key is (formatted expr, n, ring).
PresentationPtr quotient_presentation(const SchurExprPtr& expr, unsigned n, const RingSpecPtr& spec);

std::uint64_t checked_power(std::uint64_t base, unsigned exp);
std::vector<unsigned> tuple_of_index(std::uint64_t index, unsigned n, unsigned d);
std::uint64_t index_of_tuple(const std::vector<unsigned>& t, unsigned n);

ExactMatrix permutation_endomorphism(const Permutation& sigma, unsigned n, const RingSpecPtr& spec);

ExactMatrix tensor_power_map(const ExactMatrix& f, unsigned d);

/// The matrix of the construction applied to f, with basis labels attached.
/// Direct sums become block diagonal matrices.
ExactMatrix induced_map(const SchurExprPtr& expr, const ExactMatrix& f);

struct DescentWitness {
    std::vector<unsigned> tuple;              // 1-based factor indices of the offending pure tensor
    int rep_sign = 0;                         // 0 when the tensor dies in the source quotient
    std::vector<unsigned> rep_tuple;          // meaningful when rep_sign != 0
    std::vector<std::pair<std::string, std::string>> residual;  // (target label, coefficient)
};

struct DescentResult {
    bool descends = false;
    bool kernel_checked = true;
    std::optional<ExactMatrix> induced;
    std::optional<DescentWitness> witness;
};

/// Does Phi map ker(Q_src) into ker(Q_dst)?  When it does, the quotient map
/// Q_dst · Phi · Sec_src is returned and the square commutes exactly.
DescentResult descend(const ExactMatrix& phi, const SchurExprPtr& src, const SchurExprPtr& dst, unsigned n,
                      const RingSpecPtr& spec);

/// Same check for a permutation-sum lift, computed column-wise without dense
/// n^d matrices.  When check_kernel is false only the induced matrix is
/// produced and kernel_checked reports false.
DescentResult descend(const PermutationSum& phi, const SchurExprPtr& src, const SchurExprPtr& dst, unsigned n,
                      const RingSpecPtr& spec, bool check_kernel = true);

}  // namespace schur
