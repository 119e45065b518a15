#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "schur/ring.hpp"

namespace schur {

enum class ExprKind { base, sym, wedge, tensor, direct_sum };

class SchurExpr;
using SchurExprPtr = std::shared_ptr<const SchurExpr>;

/// Immutable tree describing a construction applied to a free module M:
/// symmetric powers, exterior powers, tensor products and (top level only)
/// direct sums.
class SchurExpr {
public:
    ExprKind kind() const { return kind_; }

    /// Exponent r of a sym or wedge node.
    unsigned power() const { return power_; }

    const std::vector<SchurExprPtr>& children() const { return children_; }
    const SchurExprPtr& child() const { return children_.at(0); }

    friend SchurExprPtr base();
    friend SchurExprPtr sym(unsigned r, SchurExprPtr child);
    friend SchurExprPtr wedge(unsigned r, SchurExprPtr child);
    friend SchurExprPtr tensor(std::vector<SchurExprPtr> children);
    friend SchurExprPtr direct_sum(std::vector<SchurExprPtr> summands);

private:
    SchurExpr(ExprKind kind, unsigned power, std::vector<SchurExprPtr> children)
        : kind_(kind), power_(power), children_(std::move(children)) {}

    ExprKind kind_;
    unsigned power_;
    std::vector<SchurExprPtr> children_;
};

SchurExprPtr base();
SchurExprPtr sym(unsigned r, SchurExprPtr child);
SchurExprPtr wedge(unsigned r, SchurExprPtr child);
/// A single-child tensor collapses to the child itself.
SchurExprPtr tensor(std::vector<SchurExprPtr> children);
SchurExprPtr direct_sum(std::vector<SchurExprPtr> summands);

bool operator==(const SchurExpr& a, const SchurExpr& b);
inline bool operator!=(const SchurExpr& a, const SchurExpr& b) { return !(a == b); }

/// Grammar:  expr := product ("(+)" product)*
///           product := factor ("(x)" factor)*
///           factor := primary ["^(x)" nat]
///           primary := "M" | ("S"|"W"|"T") "^" nat "(" expr ")" | "(" expr ")"
/// T^r and ^(x)r are sugar for r-fold tensor products, powers must be
/// positive, and a direct sum may only appear as the outermost node.
SchurExprPtr parse_schur_expr(std::string_view text);

std::string format_expr(const SchurExpr& e);
inline std::string format_expr(const SchurExprPtr& e) { return format_expr(*e); }

/// Number of tensor factors of M the construction consumes.  Direct sums are
/// rejected; use degrees_of for the per-summand list.
unsigned degree_of(const SchurExpr& e);
std::vector<unsigned> degrees_of(const SchurExpr& e);

/// Rank of the result on a free module of rank n.
std::uint64_t rank_of(const SchurExpr& e, unsigned n);

/// C(n, k) with overflow detection.
std::uint64_t binomial_checked(std::uint64_t n, std::uint64_t k);

/// Canonical name of one basis element: a leaf index for M itself, otherwise
/// S[...], W[...] or T[...] wrapping child labels.
class BasisLabel {
public:
    enum class Kind { leaf, sym, wedge, tensor };

    static BasisLabel leaf(unsigned index_1based);
    static BasisLabel node(Kind kind, std::vector<BasisLabel> children);

    Kind kind() const { return kind_; }
    unsigned index() const { return index_; }
    const std::vector<BasisLabel>& children() const { return children_; }

    std::string to_string() const;

    /// Leaf indices left to right (1-based): the representative pure tensor.
    void collect_leaves(std::vector<unsigned>& out) const;

    friend bool operator==(const BasisLabel& a, const BasisLabel& b);
    friend bool operator<(const BasisLabel& a, const BasisLabel& b);

private:
    BasisLabel() = default;
    Kind kind_ = Kind::leaf;
    unsigned index_ = 0;
    std::vector<BasisLabel> children_;
};

inline bool operator!=(const BasisLabel& a, const BasisLabel& b) { return !(a == b); }

/// All basis labels for the construction on a rank-n module, in the canonical
/// order (lexicographic in child indices at every node).  Direct sums are
/// rejected here; their basis is the concatenation over summands.
std::vector<BasisLabel> enumerate_basis(const SchurExpr& e, unsigned n);

}  // namespace schur
