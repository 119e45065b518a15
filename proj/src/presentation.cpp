#include "schur/presentation.hpp"

#include <algorithm>
#include <stdexcept>

namespace schur {

namespace {

constexpr std::uint64_t kDenseEntryBudget = 8'000'000;

void require(bool ok, const char* msg) {
    if (!ok) throw SpecMismatchError(msg);
}

}  // namespace

Permutation Permutation::identity(unsigned d) {
    std::vector<unsigned> m(d);
    for (unsigned p = 0; p < d; ++p) m[p] = p;
    return Permutation(std::move(m));
}

Permutation Permutation::cycle(unsigned d, const std::vector<unsigned>& positions_1based) {
    Permutation out = identity(d);
    for (size_t i = 0; i < positions_1based.size(); ++i) {
        unsigned from = positions_1based[i];
        unsigned to = positions_1based[(i + 1) % positions_1based.size()];
        require(from >= 1 && from <= d && to >= 1 && to <= d, "cycle position out of range");
        out.map_[from - 1] = to - 1;
    }
    // A cycle must visit distinct positions; re-validate bijectivity.
    return Permutation(std::move(out.map_));
}

Permutation::Permutation(std::vector<unsigned> images) : map_(std::move(images)) {
    std::vector<bool> seen(map_.size(), false);
    for (unsigned v : map_) {
        require(v < map_.size() && !seen[v], "permutation images must be a bijection");
        seen[v] = true;
    }
}

Permutation Permutation::inverse() const {
    std::vector<unsigned> inv(map_.size());
    for (unsigned p = 0; p < map_.size(); ++p) inv[map_[p]] = p;
    return Permutation(std::move(inv));
}

Permutation Permutation::after(const Permutation& inner) const {
    require(size() == inner.size(), "composing permutations of different degree");
    std::vector<unsigned> m(map_.size());
    for (unsigned p = 0; p < map_.size(); ++p) m[p] = map_[inner.map_[p]];
    return Permutation(std::move(m));
}

int Permutation::sign() const {
    int s = 1;
    for (size_t i = 0; i < map_.size(); ++i)
        for (size_t j = i + 1; j < map_.size(); ++j)
            if (map_[i] > map_[j]) s = -s;
    return s;
}

std::vector<unsigned> Permutation::apply(const std::vector<unsigned>& t) const {
    require(t.size() == map_.size(), "tuple length does not match permutation degree");
    std::vector<unsigned> u(t.size());
    for (unsigned p = 0; p < map_.size(); ++p) u[map_[p]] = t[p];
    return u;
}

PermutationSum PermutationSum::identity(unsigned d) {
    return single(Permutation::identity(d));
}

PermutationSum PermutationSum::single(const Permutation& p, long coeff) {
    PermutationSum s(p.size());
    s.add(p, coeff);
    return s;
}

PermutationSum& PermutationSum::add(const Permutation& p, long coeff) {
    require(p.size() == d_, "term degree does not match sum degree");
    if (coeff == 0) return *this;
    auto it = terms_.find(p);
    if (it == terms_.end()) {
        terms_.emplace(p, coeff);
    } else {
        it->second += coeff;
        if (it->second == 0) terms_.erase(it);
    }
    return *this;
}

PermutationSum operator+(const PermutationSum& a, const PermutationSum& b) {
    PermutationSum out = a;
    for (const auto& [p, c] : b.terms_) out.add(p, c);
    return out;
}

PermutationSum operator-(const PermutationSum& a, const PermutationSum& b) {
    PermutationSum out = a;
    for (const auto& [p, c] : b.terms_) out.add(p, -c);
    return out;
}

PermutationSum PermutationSum::scaled(long c) const {
    PermutationSum out(d_);
    for (const auto& [p, k] : terms_) out.add(p, k * c);
    return out;
}

PermutationSum PermutationSum::after(const PermutationSum& inner) const {
    require(d_ == inner.d_, "composing sums of different degree");
    PermutationSum out(d_);
    for (const auto& [p1, c1] : terms_)
        for (const auto& [p2, c2] : inner.terms_) out.add(p1.after(p2), c1 * c2);
    return out;
}

ExactMatrix PermutationSum::to_matrix(unsigned n, const RingSpecPtr& spec) const {
    std::uint64_t tuples = checked_power(n, d_);
    if (tuples * tuples > kDenseEntryBudget)
        throw std::length_error("dense matrix of permutation sum exceeds entry budget");
    ExactMatrix m(spec, tuples, tuples);
    std::vector<unsigned> t;
    for (std::uint64_t idx = 0; idx < tuples; ++idx) {
        t = tuple_of_index(idx, n, d_);
        for (const auto& [p, c] : terms_) {
            std::uint64_t u = index_of_tuple(p.apply(t), n);
            m.at(u, idx) = m.at(u, idx) + RingElement::from_int(spec, c);
        }
    }
    return m;
}

std::uint64_t checked_power(std::uint64_t base, unsigned exp) {
    std::uint64_t acc = 1;
    for (unsigned i = 0; i < exp; ++i) {
        if (base != 0 && acc > UINT64_MAX / base) throw std::overflow_error("tuple count overflows 64 bits");
        acc *= base;
    }
    return acc;
}

std::vector<unsigned> tuple_of_index(std::uint64_t index, unsigned n, unsigned d) {
    std::vector<unsigned> t(d);
    for (unsigned p = d; p-- > 0;) {
        t[p] = static_cast<unsigned>(index % n);
        index /= n;
    }
    return t;
}

std::uint64_t index_of_tuple(const std::vector<unsigned>& t, unsigned n) {
    std::uint64_t acc = 0;
    for (unsigned v : t) acc = acc * n + v;
    return acc;
}

namespace {

// Per-node routing data, precomputed once per presentation.  The prefix
// tables turn "rank of a sorted index tuple" into table lookups.
struct NodePlan {
    ExprKind kind = ExprKind::base;
    unsigned degree = 1;
    std::uint64_t rank = 0;
    unsigned power = 0;
    std::vector<NodePlan> children;
    // prefix[p][x] = number of admissible tuples branching below value x at
    // slot p, given the slots before p are already fixed minimally.
    std::vector<std::vector<std::uint64_t>> prefix;
};

NodePlan build_plan(const SchurExpr& e, unsigned n) {
    NodePlan plan;
    plan.kind = e.kind();
    plan.degree = 0;
    switch (e.kind()) {
        case ExprKind::base:
            plan.degree = 1;
            plan.rank = n;
            break;
        case ExprKind::sym:
        case ExprKind::wedge: {
            plan.power = e.power();
            plan.children.push_back(build_plan(*e.child(), n));
            const NodePlan& c = plan.children.front();
            plan.degree = plan.power * c.degree;
            std::uint64_t m = c.rank;
            unsigned r = plan.power;
            bool strict = e.kind() == ExprKind::wedge;
            plan.rank = strict ? binomial_checked(m, r) : binomial_checked(m + r - 1, r);
            plan.prefix.assign(r, {});
            for (unsigned p = 0; p < r; ++p) {
                std::vector<std::uint64_t>& row = plan.prefix[p];
                row.assign(m + 1, 0);
                unsigned left = r - p - 1;  // slots after p
                for (std::uint64_t v = 0; v < m; ++v) {
                    std::uint64_t branches = strict ? binomial_checked(m - 1 - v, left)
                                                    : binomial_checked(m - v + left - 1, left);
                    row[v + 1] = row[v] + branches;
                }
            }
            break;
        }
        case ExprKind::tensor:
            plan.rank = 1;
            for (const auto& ch : e.children()) {
                plan.children.push_back(build_plan(*ch, n));
                plan.degree += plan.children.back().degree;
                plan.rank *= plan.children.back().rank;
            }
            break;
        case ExprKind::direct_sum:
            throw SpecMismatchError("direct sums have no quotient presentation; handle summands separately");
    }
    return plan;
}

struct Routed {
    int sign;
    std::uint64_t index;
};

Routed route_node(const NodePlan& plan, const unsigned* t) {
    switch (plan.kind) {
        case ExprKind::base:
            return {1, t[0]};
        case ExprKind::tensor: {
            int sign = 1;
            std::uint64_t index = 0;
            const unsigned* slice = t;
            for (const NodePlan& c : plan.children) {
                Routed r = route_node(c, slice);
                if (r.sign == 0) return {0, 0};
                sign *= r.sign;
                index = index * c.rank + r.index;
                slice += c.degree;
            }
            return {sign, index};
        }
        case ExprKind::sym:
        case ExprKind::wedge: {
            const NodePlan& c = plan.children.front();
            unsigned r = plan.power;
            int sign = 1;
            std::uint64_t keys[16];
            std::vector<std::uint64_t> big;
            std::uint64_t* k = keys;
            if (r > 16) {
                big.resize(r);
                k = big.data();
            }
            for (unsigned i = 0; i < r; ++i) {
                Routed ri = route_node(c, t + static_cast<size_t>(i) * c.degree);
                if (ri.sign == 0) return {0, 0};
                sign *= ri.sign;
                k[i] = ri.index;
            }
            bool strict = plan.kind == ExprKind::wedge;
            for (unsigned i = 1; i < r; ++i)
                for (unsigned j = i; j > 0 && k[j] < k[j - 1]; --j) {
                    std::swap(k[j], k[j - 1]);
                    if (strict) sign = -sign;
                }
            std::uint64_t index = 0;
            std::uint64_t lo = 0;
            for (unsigned p = 0; p < r; ++p) {
                if (strict && p > 0 && k[p] == k[p - 1]) return {0, 0};
                index += plan.prefix[p][k[p]] - plan.prefix[p][lo];
                lo = strict ? k[p] + 1 : k[p];
            }
            return {sign, index};
        }
        case ExprKind::direct_sum:
            break;
    }
    throw std::logic_error("unroutable node");
}

}  // namespace

QuotientPresentation::QuotientPresentation(SchurExprPtr expr, unsigned n, RingSpecPtr spec)
    : expr_(std::move(expr)), n_(n), spec_(std::move(spec)) {
    require(n_ > 0, "module rank must be positive");
    NodePlan plan = build_plan(*expr_, n_);
    degree_ = plan.degree;
    tuple_count_ = checked_power(n_, degree_);
    labels_ = enumerate_basis(*expr_, n_);
    if (plan.rank != labels_.size()) throw std::logic_error("plan rank disagrees with enumerated basis");

    routes_.resize(tuple_count_);
    for (std::uint64_t idx = 0; idx < tuple_count_; ++idx) {
        std::vector<unsigned> t = tuple_of_index(idx, n_, degree_);
        Routed r = route_node(plan, t.data());
        routes_[idx].sign = static_cast<int8_t>(r.sign);
        routes_[idx].row = r.sign == 0 ? 0 : static_cast<std::uint32_t>(r.index);
    }

    reps_.resize(labels_.size());
    for (size_t i = 0; i < labels_.size(); ++i) {
        std::vector<unsigned> leaves;
        labels_[i].collect_leaves(leaves);
        if (leaves.size() != degree_) throw std::logic_error("label degree mismatch");
        for (unsigned& v : leaves) --v;  // labels carry 1-based indices
        reps_[i] = index_of_tuple(leaves, n_);
        const Route& r = routes_[reps_[i]];
        if (r.sign != 1 || r.row != i) throw std::logic_error("canonical representative does not route to its own label");
    }
}

const ExactMatrix& QuotientPresentation::Q() const {
    std::lock_guard<std::mutex> lock(dense_mutex_);
    if (!dense_q_) {
        if (labels_.size() * tuple_count_ > kDenseEntryBudget)
            throw std::length_error("dense projection exceeds entry budget");
        ExactMatrix q(spec_, labels_.size(), tuple_count_);
        RingElement one = RingElement::one(spec_);
        for (std::uint64_t idx = 0; idx < tuple_count_; ++idx) {
            const Route& r = routes_[idx];
            if (r.sign > 0)
                q.at(r.row, idx) = one;
            else if (r.sign < 0)
                q.at(r.row, idx) = -one;
        }
        for (const BasisLabel& l : labels_) q.row_labels.push_back(l.to_string());
        dense_q_ = std::move(q);
    }
    return *dense_q_;
}

const ExactMatrix& QuotientPresentation::Sec() const {
    std::lock_guard<std::mutex> lock(dense_mutex_);
    if (!dense_sec_) {
        if (labels_.size() * tuple_count_ > kDenseEntryBudget)
            throw std::length_error("dense section exceeds entry budget");
        ExactMatrix s(spec_, tuple_count_, labels_.size());
        RingElement one = RingElement::one(spec_);
        for (size_t i = 0; i < labels_.size(); ++i) s.at(reps_[i], i) = one;
        for (const BasisLabel& l : labels_) s.col_labels.push_back(l.to_string());
        dense_sec_ = std::move(s);
    }
    return *dense_sec_;
}

PresentationPtr quotient_presentation(const SchurExprPtr& expr, unsigned n, const RingSpecPtr& spec) {
    static std::mutex cache_mutex;
    static std::map<std::string, PresentationPtr> cache;
    std::string key = format_expr(*expr) + "|" + std::to_string(n) + "|" + spec->to_string();
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto made = std::make_shared<const QuotientPresentation>(expr, n, spec);
    cache.emplace(std::move(key), made);
    return made;
}

ExactMatrix permutation_endomorphism(const Permutation& sigma, unsigned n, const RingSpecPtr& spec) {
    return PermutationSum::single(sigma).to_matrix(n, spec);
}

ExactMatrix tensor_power_map(const ExactMatrix& f, unsigned d) {
    require(d >= 1, "tensor power needs d >= 1");
    if (checked_power(f.rows(), d) * checked_power(f.cols(), d) > kDenseEntryBudget)
        throw std::length_error("dense tensor power exceeds entry budget");
    ExactMatrix acc = f;
    RingElement zero = RingElement::zero(f.spec());
    for (unsigned step = 1; step < d; ++step) {
        ExactMatrix next(f.spec(), acc.rows() * f.rows(), acc.cols() * f.cols());
        for (size_t i = 0; i < acc.rows(); ++i)
            for (size_t j = 0; j < acc.cols(); ++j) {
                if (acc.at(i, j) == zero) continue;
                for (size_t p = 0; p < f.rows(); ++p)
                    for (size_t q = 0; q < f.cols(); ++q) {
                        if (f.at(p, q) == zero) continue;
                        next.at(i * f.rows() + p, j * f.cols() + q) = acc.at(i, j) * f.at(p, q);
                    }
            }
        acc = std::move(next);
    }
    acc.row_labels.clear();
    acc.col_labels.clear();
    return acc;
}

namespace {

ExactMatrix induced_map_sum_free(const SchurExprPtr& expr, const ExactMatrix& f) {
    unsigned n_dst = static_cast<unsigned>(f.rows());
    unsigned n_src = static_cast<unsigned>(f.cols());
    require(n_dst > 0 && n_src > 0, "induced map needs a nonempty matrix");
    PresentationPtr dst = quotient_presentation(expr, n_dst, f.spec());
    PresentationPtr src = quotient_presentation(expr, n_src, f.spec());
    unsigned d = dst->degree();
    std::uint64_t dst_tuples = dst->tuple_count();
    if (dst_tuples > kDenseEntryBudget) throw std::length_error("induced map column exceeds entry budget");

    ExactMatrix out(f.spec(), dst->labels().size(), src->labels().size());
    RingElement zero = RingElement::zero(f.spec());
    std::vector<RingElement> col, next;
    for (size_t j = 0; j < src->labels().size(); ++j) {
        std::vector<unsigned> s = tuple_of_index(src->representative(j), n_src, d);
        // Column of f^{⊗d} at the representative, built factor by factor.
        col.assign(1, RingElement::one(f.spec()));
        for (unsigned p = 0; p < d; ++p) {
            next.assign(col.size() * n_dst, zero);
            for (size_t prefix = 0; prefix < col.size(); ++prefix) {
                if (col[prefix] == zero) continue;
                for (unsigned v = 0; v < n_dst; ++v) {
                    const RingElement& fv = f.at(v, s[p]);
                    if (fv == zero) continue;
                    next[prefix * n_dst + v] = col[prefix] * fv;
                }
            }
            col.swap(next);
        }
        for (std::uint64_t t = 0; t < dst_tuples; ++t) {
            if (col[t] == zero) continue;
            const QuotientPresentation::Route& r = dst->routes()[t];
            if (r.sign == 0) continue;
            if (r.sign > 0)
                out.at(r.row, j) = out.at(r.row, j) + col[t];
            else
                out.at(r.row, j) = out.at(r.row, j) - col[t];
        }
    }
    for (const BasisLabel& l : dst->labels()) out.row_labels.push_back(l.to_string());
    for (const BasisLabel& l : src->labels()) out.col_labels.push_back(l.to_string());
    return out;
}

}  // namespace

ExactMatrix induced_map(const SchurExprPtr& expr, const ExactMatrix& f) {
    if (expr->kind() != ExprKind::direct_sum) return induced_map_sum_free(expr, f);
    std::vector<ExactMatrix> blocks;
    size_t rows = 0, cols = 0;
    for (const auto& summand : expr->children()) {
        blocks.push_back(induced_map_sum_free(summand, f));
        rows += blocks.back().rows();
        cols += blocks.back().cols();
    }
    ExactMatrix out(f.spec(), rows, cols);
    size_t r0 = 0, c0 = 0;
    for (size_t b = 0; b < blocks.size(); ++b) {
        const ExactMatrix& blk = blocks[b];
        for (size_t i = 0; i < blk.rows(); ++i)
            for (size_t j = 0; j < blk.cols(); ++j) out.at(r0 + i, c0 + j) = blk.at(i, j);
        for (const std::string& l : blk.row_labels) out.row_labels.push_back(std::to_string(b) + "." + l);
        for (const std::string& l : blk.col_labels) out.col_labels.push_back(std::to_string(b) + "." + l);
        r0 += blk.rows();
        c0 += blk.cols();
    }
    return out;
}

namespace {

std::vector<unsigned> one_based(std::vector<unsigned> t) {
    for (unsigned& v : t) ++v;
    return t;
}

}  // namespace

DescentResult descend(const ExactMatrix& phi, const SchurExprPtr& src, const SchurExprPtr& dst, unsigned n,
                      const RingSpecPtr& spec) {
    PresentationPtr ps = quotient_presentation(src, n, spec);
    PresentationPtr pd = quotient_presentation(dst, n, spec);
    require(phi.rows() == pd->tuple_count() && phi.cols() == ps->tuple_count(),
            "lift shape does not match the tensor powers of src and dst");
    ExactMatrix t = matmul(pd->Q(), phi);
    ExactMatrix induced = matmul(t, ps->Sec());
    RingElement zero = RingElement::zero(spec);

    for (std::uint64_t col = 0; col < ps->tuple_count(); ++col) {
        const QuotientPresentation::Route& r = ps->routes()[col];
        DescentWitness w;
        bool bad = false;
        for (size_t row = 0; row < t.rows(); ++row) {
            RingElement resid = t.at(row, col);
            if (r.sign > 0)
                resid = resid - induced.at(row, r.row);
            else if (r.sign < 0)
                resid = resid + induced.at(row, r.row);
            if (!(resid == zero)) {
                bad = true;
                w.residual.emplace_back(pd->labels()[row].to_string(), resid.to_string());
            }
        }
        if (bad) {
            w.tuple = one_based(tuple_of_index(col, n, ps->degree()));
            w.rep_sign = r.sign;
            if (r.sign != 0) w.rep_tuple = one_based(tuple_of_index(ps->representative(r.row), n, ps->degree()));
            DescentResult res;
            res.descends = false;
            res.witness = std::move(w);
            return res;
        }
    }
    DescentResult res;
    res.descends = true;
    res.induced = std::move(induced);
    return res;
}

DescentResult descend(const PermutationSum& phi, const SchurExprPtr& src, const SchurExprPtr& dst, unsigned n,
                      const RingSpecPtr& spec, bool check_kernel) {
    PresentationPtr ps = quotient_presentation(src, n, spec);
    PresentationPtr pd = quotient_presentation(dst, n, spec);
    require(ps->degree() == phi.degree() && pd->degree() == phi.degree(),
            "permutation sum degree must match both constructions");
    unsigned d = phi.degree();
    size_t m_dst = pd->labels().size();
    size_t m_src = ps->labels().size();

    // All coefficients stay integral: routes are signs and lift coefficients
    // are integers, whatever the scalar ring is.
    std::vector<std::vector<long long>> m(m_dst, std::vector<long long>(m_src, 0));
    for (size_t j = 0; j < m_src; ++j) {
        std::vector<unsigned> s = tuple_of_index(ps->representative(j), n, d);
        for (const auto& [perm, coeff] : phi.terms()) {
            std::uint64_t u = index_of_tuple(perm.apply(s), n);
            const QuotientPresentation::Route& r = pd->routes()[u];
            if (r.sign != 0) m[r.row][j] += r.sign * coeff;
        }
    }

    DescentResult res;
    res.kernel_checked = check_kernel;
    if (check_kernel) {
        std::map<std::uint32_t, long long> acc;
        for (std::uint64_t idx = 0; idx < ps->tuple_count(); ++idx) {
            std::vector<unsigned> t = tuple_of_index(idx, n, d);
            acc.clear();
            for (const auto& [perm, coeff] : phi.terms()) {
                std::uint64_t u = index_of_tuple(perm.apply(t), n);
                const QuotientPresentation::Route& r = pd->routes()[u];
                if (r.sign != 0) acc[r.row] += r.sign * coeff;
            }
            const QuotientPresentation::Route& rs = ps->routes()[idx];
            DescentWitness w;
            for (size_t row = 0; row < m_dst; ++row) {
                long long got = 0;
                auto it = acc.find(static_cast<std::uint32_t>(row));
                if (it != acc.end()) got = it->second;
                long long want = rs.sign == 0 ? 0 : rs.sign * m[row][rs.row];
                if (got != want)
                    w.residual.emplace_back(pd->labels()[row].to_string(), std::to_string(got - want));
            }
            if (!w.residual.empty()) {
                w.tuple = one_based(t);
                w.rep_sign = rs.sign;
                if (rs.sign != 0) w.rep_tuple = one_based(tuple_of_index(ps->representative(rs.row), n, d));
                res.descends = false;
                res.witness = std::move(w);
                return res;
            }
        }
    }

    ExactMatrix induced(spec, m_dst, m_src);
    for (size_t i = 0; i < m_dst; ++i)
        for (size_t j = 0; j < m_src; ++j)
            if (m[i][j] != 0) induced.at(i, j) = RingElement::from_int(spec, m[i][j]);
    for (const BasisLabel& l : pd->labels()) induced.row_labels.push_back(l.to_string());
    for (const BasisLabel& l : ps->labels()) induced.col_labels.push_back(l.to_string());
    res.descends = true;
    res.induced = std::move(induced);
    return res;
}

}  // namespace schur
