#include "schur/expr.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <stdexcept>

namespace schur {

SchurExprPtr base() { return SchurExprPtr(new SchurExpr(ExprKind::base, 0, {})); }

SchurExprPtr sym(unsigned r, SchurExprPtr child) {
    if (r == 0) throw std::invalid_argument("sym power must be positive");
    if (!child) throw std::invalid_argument("sym child is null");
    return SchurExprPtr(new SchurExpr(ExprKind::sym, r, {std::move(child)}));
}

SchurExprPtr wedge(unsigned r, SchurExprPtr child) {
    if (r == 0) throw std::invalid_argument("wedge power must be positive");
    if (!child) throw std::invalid_argument("wedge child is null");
    return SchurExprPtr(new SchurExpr(ExprKind::wedge, r, {std::move(child)}));
}

SchurExprPtr tensor(std::vector<SchurExprPtr> children) {
    if (children.empty()) throw std::invalid_argument("tensor needs at least one factor");
    if (children.size() == 1) return children[0];
    return SchurExprPtr(new SchurExpr(ExprKind::tensor, 0, std::move(children)));
}

SchurExprPtr direct_sum(std::vector<SchurExprPtr> summands) {
    if (summands.empty()) throw std::invalid_argument("direct sum needs at least one summand");
    if (summands.size() == 1) return summands[0];
    return SchurExprPtr(new SchurExpr(ExprKind::direct_sum, 0, std::move(summands)));
}

bool operator==(const SchurExpr& a, const SchurExpr& b) {
    if (a.kind() != b.kind() || a.power() != b.power()) return false;
    if (a.children().size() != b.children().size()) return false;
    for (size_t i = 0; i < a.children().size(); ++i)
        if (*a.children()[i] != *b.children()[i]) return false;
    return true;
}

namespace {

struct ExprParser {
    std::string_view text;
    size_t pos = 0;

    [[noreturn]] void fail(const std::string& msg, size_t at) { throw ParseError(msg, at); }

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool at_token(std::string_view tok) {
        skip_ws();
        size_t p = pos, t = 0;
        // Tokens "(x)" and "(+)" tolerate interior whitespace.
        while (t < tok.size()) {
            while (p < text.size() && std::isspace(static_cast<unsigned char>(text[p]))) ++p;
            if (p >= text.size() || text[p] != tok[t]) return false;
            ++p;
            ++t;
        }
        return true;
    }

    bool eat_token(std::string_view tok) {
        if (!at_token(tok)) return false;
        skip_ws();
        size_t t = 0;
        while (t < tok.size()) {
            while (std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
            ++pos;
            ++t;
        }
        return true;
    }

    unsigned parse_power() {
        skip_ws();
        size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) fail("expected a power", start);
        unsigned long r = std::stoul(std::string(text.substr(start, pos - start)));
        if (r == 0) fail("power must be positive", start);
        if (r > 64) fail("power out of range", start);
        return static_cast<unsigned>(r);
    }

    struct Node {
        SchurExprPtr expr;
        size_t start;
    };

    void require_no_sum(const Node& child) {
        if (child.expr->kind() == ExprKind::direct_sum)
            fail("direct sum is only allowed at the top level", child.start);
    }

    Node parse_primary() {
        skip_ws();
        size_t start = pos;
        if (pos >= text.size()) fail("expected an expression", pos);
        char c = text[pos];
        if (c == 'M') {
            ++pos;
            return {base(), start};
        }
        if (c == 'S' || c == 'W' || c == 'T') {
            ++pos;
            skip_ws();
            if (pos >= text.size() || text[pos] != '^') fail("expected ^ after functor letter", pos);
            ++pos;
            unsigned r = parse_power();
            skip_ws();
            if (pos >= text.size() || text[pos] != '(') fail("expected ( after power", pos);
            ++pos;
            Node inner = parse_expr(false);
            skip_ws();
            if (pos >= text.size() || text[pos] != ')') fail("expected )", pos);
            ++pos;
            require_no_sum(inner);
            if (c == 'S') return {sym(r, inner.expr), start};
            if (c == 'W') return {wedge(r, inner.expr), start};
            return {tensor(std::vector<SchurExprPtr>(r, inner.expr)), start};
        }
        if (c == '(') {
            ++pos;
            Node inner = parse_expr(true);
            skip_ws();
            if (pos >= text.size() || text[pos] != ')') fail("expected )", pos);
            ++pos;
            return {inner.expr, start};
        }
        fail(std::string("unexpected character '") + c + "'", pos);
    }

    Node parse_factor() {
        Node primary = parse_primary();
        skip_ws();
        if (pos < text.size() && text[pos] == '^') {
            size_t caret = pos;
            ++pos;
            if (!eat_token("(x)")) fail("expected (x) after ^", caret + 1);
            unsigned r = parse_power();
            require_no_sum(primary);
            primary.expr = tensor(std::vector<SchurExprPtr>(r, primary.expr));
        }
        return primary;
    }

    Node parse_product() {
        Node first = parse_factor();
        if (!at_token("(x)")) return first;
        std::vector<Node> factors{first};
        while (eat_token("(x)")) factors.push_back(parse_factor());
        std::vector<SchurExprPtr> children;
        for (const auto& f : factors) {
            require_no_sum(f);
            children.push_back(f.expr);
        }
        return {tensor(std::move(children)), first.start};
    }

    // allow_sum covers the parenthesized-whole-expression case; a sum built
    // there still has to end up as the root, which require_no_sum enforces at
    // every enclosing node.
    Node parse_expr(bool allow_sum) {
        Node first = parse_product();
        if (!at_token("(+)")) return first;
        require_no_sum(first);
        std::vector<SchurExprPtr> summands{first.expr};
        while (eat_token("(+)")) {
            Node next = parse_product();
            require_no_sum(next);
            summands.push_back(next.expr);
        }
        (void)allow_sum;
        return {direct_sum(std::move(summands)), first.start};
    }

    SchurExprPtr parse() {
        Node root = parse_expr(true);
        skip_ws();
        if (pos != text.size()) fail("trailing input", pos);
        return root.expr;
    }
};

}  // namespace

SchurExprPtr parse_schur_expr(std::string_view text) {
    ExprParser parser{text};
    return parser.parse();
}

namespace {

void format_into(const SchurExpr& e, std::string& out, bool parenthesize_products) {
    switch (e.kind()) {
        case ExprKind::base: out += "M"; return;
        case ExprKind::sym:
        case ExprKind::wedge:
            out += e.kind() == ExprKind::sym ? "S^" : "W^";
            out += std::to_string(e.power());
            out += "(";
            format_into(*e.child(), out, false);
            out += ")";
            return;
        case ExprKind::tensor: {
            if (parenthesize_products) out += "(";
            bool first = true;
            for (const auto& c : e.children()) {
                if (!first) out += " (x) ";
                first = false;
                format_into(*c, out, c->kind() == ExprKind::tensor);
            }
            if (parenthesize_products) out += ")";
            return;
        }
        case ExprKind::direct_sum: {
            bool first = true;
            for (const auto& c : e.children()) {
                if (!first) out += " (+) ";
                first = false;
                format_into(*c, out, false);
            }
            return;
        }
    }
}

}  // namespace

std::string format_expr(const SchurExpr& e) {
    std::string out;
    format_into(e, out, false);
    return out;
}

unsigned degree_of(const SchurExpr& e) {
    switch (e.kind()) {
        case ExprKind::base: return 1;
        case ExprKind::sym:
        case ExprKind::wedge: return e.power() * degree_of(*e.child());
        case ExprKind::tensor: {
            unsigned d = 0;
            for (const auto& c : e.children()) d += degree_of(*c);
            return d;
        }
        case ExprKind::direct_sum:
            throw std::invalid_argument("direct sum has one degree per summand");
    }
    throw std::logic_error("unreachable");
}

std::vector<unsigned> degrees_of(const SchurExpr& e) {
    if (e.kind() != ExprKind::direct_sum) return {degree_of(e)};
    std::vector<unsigned> out;
    for (const auto& c : e.children()) out.push_back(degree_of(*c));
    return out;
}

std::uint64_t binomial_checked(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    std::uint64_t result = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        // result * (n - k + i) / i is integral at every step.
        std::uint64_t num = n - k + i;
        std::uint64_t g = std::gcd(result, i);
        std::uint64_t r = result / g;
        std::uint64_t d = i / g;
        if (num % d != 0) throw std::logic_error("binomial step not integral");
        std::uint64_t factor = num / d;
        if (r != 0 && factor > UINT64_MAX / r) throw std::overflow_error("binomial overflow");
        result = r * factor;
    }
    return result;
}

std::uint64_t rank_of(const SchurExpr& e, unsigned n) {
    switch (e.kind()) {
        case ExprKind::base: return n;
        case ExprKind::sym: {
            std::uint64_t m = rank_of(*e.child(), n);
            return binomial_checked(m + e.power() - 1, e.power());
        }
        case ExprKind::wedge: return binomial_checked(rank_of(*e.child(), n), e.power());
        case ExprKind::tensor: {
            std::uint64_t r = 1;
            for (const auto& c : e.children()) {
                std::uint64_t f = rank_of(*c, n);
                if (f != 0 && r > UINT64_MAX / f) throw std::overflow_error("rank overflow");
                r *= f;
            }
            return r;
        }
        case ExprKind::direct_sum: {
            std::uint64_t r = 0;
            for (const auto& c : e.children()) {
                std::uint64_t f = rank_of(*c, n);
                if (r > UINT64_MAX - f) throw std::overflow_error("rank overflow");
                r += f;
            }
            return r;
        }
    }
    throw std::logic_error("unreachable");
}

BasisLabel BasisLabel::leaf(unsigned index_1based) {
    BasisLabel l;
    l.kind_ = Kind::leaf;
    l.index_ = index_1based;
    return l;
}

BasisLabel BasisLabel::node(Kind kind, std::vector<BasisLabel> children) {
    if (kind == Kind::leaf) throw std::invalid_argument("leaf labels carry no children");
    BasisLabel l;
    l.kind_ = kind;
    l.children_ = std::move(children);
    return l;
}

std::string BasisLabel::to_string() const {
    switch (kind_) {
        case Kind::leaf: return std::to_string(index_);
        case Kind::sym:
        case Kind::wedge:
        case Kind::tensor: {
            std::string out(1, kind_ == Kind::sym ? 'S' : kind_ == Kind::wedge ? 'W' : 'T');
            out += "[";
            bool first = true;
            for (const auto& c : children_) {
                if (!first) out += ",";
                first = false;
                out += c.to_string();
            }
            return out + "]";
        }
    }
    return "?";
}

void BasisLabel::collect_leaves(std::vector<unsigned>& out) const {
    if (kind_ == Kind::leaf) {
        out.push_back(index_);
        return;
    }
    for (const auto& c : children_) c.collect_leaves(out);
}

bool operator==(const BasisLabel& a, const BasisLabel& b) {
    return a.kind_ == b.kind_ && a.index_ == b.index_ && a.children_ == b.children_;
}

bool operator<(const BasisLabel& a, const BasisLabel& b) {
    if (a.kind_ != b.kind_) return a.kind_ < b.kind_;
    if (a.kind_ == BasisLabel::Kind::leaf) return a.index_ < b.index_;
    return std::lexicographical_compare(a.children_.begin(), a.children_.end(), b.children_.begin(),
                                        b.children_.end());
}

namespace {

// Emits tuples (i_0 <= i_1 <= ... or strictly increasing) over child basis B.
void emit_power_labels(BasisLabel::Kind kind, const std::vector<BasisLabel>& child_basis, unsigned r,
                       std::vector<BasisLabel>& out) {
    const size_t m = child_basis.size();
    std::vector<size_t> idx;
    bool strict = kind == BasisLabel::Kind::wedge;
    if (m == 0 || (strict && r > m)) return;

    idx.resize(r);
    for (unsigned p = 0; p < r; ++p) idx[p] = strict ? p : 0;
    while (true) {
        std::vector<BasisLabel> children;
        children.reserve(r);
        for (size_t i : idx) children.push_back(child_basis[i]);
        out.push_back(BasisLabel::node(kind, std::move(children)));
        // Advance the last position that still has room.
        size_t p = r;
        while (p > 0) {
            --p;
            size_t limit = strict ? m - (r - p) : m - 1;
            if (idx[p] < limit) {
                ++idx[p];
                for (size_t q = p + 1; q < r; ++q) idx[q] = strict ? idx[q - 1] + 1 : idx[p];
                break;
            }
            if (p == 0) return;
        }
        if (r == 0) return;
    }
}

}  // namespace

std::vector<BasisLabel> enumerate_basis(const SchurExpr& e, unsigned n) {
    switch (e.kind()) {
        case ExprKind::base: {
            std::vector<BasisLabel> out;
            out.reserve(n);
            for (unsigned i = 1; i <= n; ++i) out.push_back(BasisLabel::leaf(i));
            return out;
        }
        case ExprKind::sym:
        case ExprKind::wedge: {
            auto child_basis = enumerate_basis(*e.child(), n);
            std::vector<BasisLabel> out;
            emit_power_labels(e.kind() == ExprKind::sym ? BasisLabel::Kind::sym : BasisLabel::Kind::wedge,
                              child_basis, e.power(), out);
            return out;
        }
        case ExprKind::tensor: {
            std::vector<std::vector<BasisLabel>> factor_bases;
            for (const auto& c : e.children()) factor_bases.push_back(enumerate_basis(*c, n));
            std::vector<BasisLabel> out;
            std::vector<size_t> idx(factor_bases.size(), 0);
            for (const auto& fb : factor_bases)
                if (fb.empty()) return out;
            while (true) {
                std::vector<BasisLabel> children;
                children.reserve(idx.size());
                for (size_t f = 0; f < idx.size(); ++f) children.push_back(factor_bases[f][idx[f]]);
                out.push_back(BasisLabel::node(BasisLabel::Kind::tensor, std::move(children)));
                size_t f = idx.size();
                bool advanced = false;
                while (f > 0) {
                    --f;
                    if (idx[f] + 1 < factor_bases[f].size()) {
                        ++idx[f];
                        for (size_t g = f + 1; g < idx.size(); ++g) idx[g] = 0;
                        advanced = true;
                        break;
                    }
                }
                if (!advanced) return out;
            }
        }
        case ExprKind::direct_sum:
            throw std::invalid_argument("enumerate per summand for a direct sum");
    }
    throw std::logic_error("unreachable");
}

}  // namespace schur
