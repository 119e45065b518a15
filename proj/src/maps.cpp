#include "schur/maps.hpp"

#include <algorithm>
#include <numeric>

namespace schur {

DescentError::DescentError(std::string map_name, DescentWitness witness)
    : std::runtime_error("lift of " + map_name + " does not descend to the quotients"),
      map_name_(std::move(map_name)),
      witness_(std::move(witness)) {}

namespace {

Permutation inverse_of(const std::vector<unsigned>& images) {
    std::vector<unsigned> inv(images.size());
    for (unsigned p = 0; p < images.size(); ++p) inv[images[p]] = p;
    return Permutation(std::move(inv));
}

int sign_of_images(const std::vector<unsigned>& v) {
    int s = 1;
    for (size_t i = 0; i < v.size(); ++i)
        for (size_t j = i + 1; j < v.size(); ++j)
            if (v[i] > v[j]) s = -s;
    return s;
}

/// Iterate over all assignments of one permutation of {0..m-1} to each of
/// `count` slots; f receives the vector of permutations.
template <typename F>
void for_each_perm_tuple(unsigned count, unsigned m, F&& f) {
    std::vector<std::vector<unsigned>> slots(count);
    for (auto& s : slots) {
        s.resize(m);
        std::iota(s.begin(), s.end(), 0u);
    }
    while (true) {
        f(const_cast<const std::vector<std::vector<unsigned>>&>(slots));
        unsigned pos = 0;
        while (pos < count && !std::next_permutation(slots[pos].begin(), slots[pos].end())) ++pos;
        if (pos == count) break;
    }
}

/// Pad a sum on d slots to act identically on slots d..new_d-1.
PermutationSum pad_identity(const PermutationSum& s, unsigned new_d) {
    PermutationSum out(new_d);
    for (const auto& [p, c] : s.terms()) {
        std::vector<unsigned> images(new_d);
        for (unsigned q = 0; q < new_d; ++q) images[q] = q < s.degree() ? p(q) : q;
        out.add(Permutation(std::move(images)), c);
    }
    return out;
}

}  // namespace

PermutationSum lift_sym_to_wedge(unsigned n, unsigned k) {
    unsigned d = n * k;
    PermutationSum out(d);
    if (n == 0 || k == 0) throw SpecMismatchError("parameters must be positive");
    for_each_perm_tuple(n - 1, k, [&](const std::vector<std::vector<unsigned>>& sigmas) {
        // Block j of k symmetric slots scatters into the k wedge groups of
        // size n; sigma_j decides which group each slot feeds (sigma_0 = id).
        std::vector<unsigned> images(d);
        for (unsigned j = 0; j < n; ++j) {
            std::vector<unsigned> inv(k);
            if (j == 0)
                std::iota(inv.begin(), inv.end(), 0u);
            else
                for (unsigned c = 0; c < k; ++c) inv[sigmas[j - 1][c]] = c;
            for (unsigned c = 0; c < k; ++c) images[j * k + c] = inv[c] * n + j;
        }
        out.add(Permutation(std::move(images)), 1);
    });
    return out;
}

PermutationSum lift_wedge_to_sym(unsigned n, unsigned k) {
    unsigned d = n * k;
    PermutationSum out(d);
    if (n == 0 || k == 0) throw SpecMismatchError("parameters must be positive");
    for_each_perm_tuple(k - 1, n, [&](const std::vector<std::vector<unsigned>>& taus) {
        std::vector<unsigned> images(d);
        int sign = 1;
        for (unsigned i = 0; i < k; ++i) {
            std::vector<unsigned> inv(n);
            if (i == 0) {
                std::iota(inv.begin(), inv.end(), 0u);
            } else {
                for (unsigned c = 0; c < n; ++c) inv[taus[i - 1][c]] = c;
                sign *= sign_of_images(taus[i - 1]);
            }
            for (unsigned c = 0; c < n; ++c) images[i * n + c] = inv[c] * k + i;
        }
        out.add(Permutation(std::move(images)), sign);
    });
    return out;
}

PermutationSum lift_splitting(unsigned n) {
    unsigned d = 2 * n;
    PermutationSum out(d);
    // Choose which n of the 2n slots form the first half; slot 0 always does,
    // which picks one representative per unordered split.
    std::vector<unsigned> rest(n - 1);
    std::iota(rest.begin(), rest.end(), 1u);  // combination out of {1..2n-1}
    while (true) {
        std::vector<bool> in_first(d, false);
        in_first[0] = true;
        for (unsigned v : rest) in_first[v] = true;
        std::vector<unsigned> images(d);
        unsigned lo = 0, hi = n;
        for (unsigned p = 0; p < d; ++p) images[p] = in_first[p] ? lo++ : hi++;
        out.add(Permutation(std::move(images)), 1);

        // next combination
        if (n == 1) break;
        int pos = static_cast<int>(rest.size()) - 1;
        while (pos >= 0 && rest[pos] == d - (rest.size() - pos)) --pos;
        if (pos < 0) break;
        ++rest[pos];
        for (size_t q = pos + 1; q < rest.size(); ++q) rest[q] = rest[q - 1] + 1;
    }
    return out;
}

PermutationSum lift_pair_insertion(unsigned n) {
    if (n < 3) throw SpecMismatchError("pair insertion needs n >= 3");
    unsigned d = 2 * n;
    // Four ways to shuffle the wedge slots {0,1,2,3} into the two blocks of
    // the target symmetric square; the remaining slots ride along.
    PermutationSum shuffle(d);
    const unsigned choices[4][4] = {
        // targets of slots 0,1,2,3
        {0, n, 1, n + 1},
        {0, n, n + 1, 1},
        {n, 0, n + 1, 1},
        {n, 0, 1, n + 1},
    };
    for (const auto& c : choices) {
        std::vector<unsigned> images(d);
        for (unsigned p = 0; p < 4; ++p) images[p] = c[p];
        for (unsigned p = 4; p < n + 2; ++p) images[p] = p - 2;  // first S^{n-2} block
        for (unsigned p = n + 2; p < d; ++p) images[p] = p;      // second block
        shuffle.add(Permutation(std::move(images)), 1);
    }
    return shuffle.after(pad_identity(lift_wedge_to_sym(2, 2), d));
}

PermutationSum lift_pair_extraction(unsigned n) {
    if (n < 3) throw SpecMismatchError("pair extraction needs n >= 3");
    unsigned d = 2 * n;
    PermutationSum gather(d);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = i + 1; j < n; ++j)
            for (unsigned k = 0; k < n; ++k)
                for (unsigned l = k + 1; l < n; ++l)
                    for (int swapped = 0; swapped < 2; ++swapped) {
                        std::vector<unsigned> images(d);
                        images[i] = 0;
                        images[j] = 2;
                        images[n + k] = swapped ? 3 : 1;
                        images[n + l] = swapped ? 1 : 3;
                        unsigned next = 4;
                        for (unsigned p = 0; p < n; ++p)
                            if (p != i && p != j) images[p] = next++;
                        next = n + 2;
                        for (unsigned p = n; p < d; ++p)
                            if (p != n + k && p != n + l) images[p] = next++;
                        gather.add(Permutation(std::move(images)), 1);
                    }
    return pad_identity(lift_sym_to_wedge(2, 2), d).after(gather);
}

namespace {

NamedMap finish(std::string name, SchurExprPtr src, SchurExprPtr dst, unsigned rank, const RingSpecPtr& spec,
                PermutationSum lift, bool check_kernel) {
    DescentResult r = descend(lift, src, dst, rank, spec, check_kernel);
    if (!r.descends) throw DescentError(name, std::move(*r.witness));
    return NamedMap{std::move(name), std::move(src), std::move(dst), rank,
                    std::move(lift), std::move(*r.induced), r.kernel_checked};
}

void require_even_k(unsigned k, bool allow_odd) {
    if (k % 2 == 1 && !allow_odd)
        throw SpecMismatchError("k must be even here; pass the odd-k override to experiment anyway");
}

}  // namespace

NamedMap map_phi_nk(unsigned n, unsigned k, unsigned rank, const RingSpecPtr& spec, bool allow_odd,
                    bool check_kernel) {
    if (n == 0 || k == 0) throw SpecMismatchError("parameters must be positive");
    require_even_k(k, allow_odd);
    SchurExprPtr src = sym(n, sym(k, base()));
    SchurExprPtr dst = sym(k, wedge(n, base()));
    return finish("phi_nk", src, dst, rank, spec, lift_sym_to_wedge(n, k), check_kernel);
}

NamedMap map_phi_kn(unsigned n, unsigned k, unsigned rank, const RingSpecPtr& spec, bool allow_odd,
                    bool check_kernel) {
    if (n == 0 || k == 0) throw SpecMismatchError("parameters must be positive");
    require_even_k(k, allow_odd);
    SchurExprPtr src = sym(k, wedge(n, base()));
    SchurExprPtr dst = sym(n, sym(k, base()));
    return finish("phi_kn", src, dst, rank, spec, lift_wedge_to_sym(n, k), check_kernel);
}

NamedMap map_q(unsigned n, unsigned rank, const RingSpecPtr& spec, bool check_kernel) {
    if (n == 0) throw SpecMismatchError("parameters must be positive");
    return finish("q", sym(2, sym(n, base())), sym(2 * n, base()), rank, spec,
                  PermutationSum::identity(2 * n), check_kernel);
}

NamedMap map_varphi(unsigned n, unsigned rank, const RingSpecPtr& spec, bool check_kernel) {
    if (n == 0) throw SpecMismatchError("parameters must be positive");
    return finish("varphi", sym(2 * n, base()), sym(2, sym(n, base())), rank, spec, lift_splitting(n),
                  check_kernel);
}

namespace {

SchurExprPtr pair_side(unsigned n) {
    return tensor({sym(2, wedge(2, base())), sym(2, sym(n - 2, base()))});
}

}  // namespace

NamedMap map_i(unsigned n, unsigned rank, const RingSpecPtr& spec, bool check_kernel) {
    if (n < 3) throw SpecMismatchError("this map needs n >= 3");
    return finish("i", pair_side(n), sym(2, sym(n, base())), rank, spec, lift_pair_insertion(n), check_kernel);
}

NamedMap map_j(unsigned n, unsigned rank, const RingSpecPtr& spec, bool check_kernel) {
    if (n < 3) throw SpecMismatchError("this map needs n >= 3");
    return finish("j", sym(2, sym(n, base())), pair_side(n), rank, spec, lift_pair_extraction(n), check_kernel);
}

NamedMap map_tau(unsigned rank, const RingSpecPtr& spec, bool check_kernel) {
    NamedMap m = map_phi_nk(2, 2, rank, spec, false, check_kernel);
    m.name = "tau";
    return m;
}

namespace {

PermutationSum chain_lift(int coeff_id, int coeff_s23, int coeff_s234) {
    PermutationSum out(4);
    if (coeff_id) out.add(Permutation::identity(4), coeff_id);
    if (coeff_s23) out.add(Permutation::cycle(4, {2, 3}), coeff_s23);
    if (coeff_s234) out.add(Permutation::cycle(4, {2, 3, 4}), coeff_s234);
    return out;
}

}  // namespace

NamedMap map_alpha(unsigned index, unsigned rank, const RingSpecPtr& spec, bool check_kernel) {
    SchurExprPtr w4 = wedge(4, base());
    SchurExprPtr a = sym(2, wedge(2, base()));
    SchurExprPtr b = sym(2, sym(2, base()));
    SchurExprPtr c = sym(4, base());
    switch (index) {
        case 1:
            return finish("alpha1", w4, a, rank, spec, chain_lift(1, -1, 1), check_kernel);
        case 2:
            return finish("alpha2", a, b, rank, spec, chain_lift(0, 1, -1), check_kernel);
        case 3:
            return finish("alpha3", b, c, rank, spec, chain_lift(1, 0, 0), check_kernel);
        default:
            throw SpecMismatchError("chain index must be 1, 2 or 3");
    }
}

NamedMap map_beta(unsigned index, unsigned rank, const RingSpecPtr& spec, bool check_kernel) {
    SchurExprPtr w4 = wedge(4, base());
    SchurExprPtr a = sym(2, wedge(2, base()));
    SchurExprPtr b = sym(2, sym(2, base()));
    SchurExprPtr c = sym(4, base());
    switch (index) {
        case 1:
            return finish("beta1", a, w4, rank, spec, chain_lift(1, 0, 0), check_kernel);
        case 2:
            return finish("beta2", b, a, rank, spec, chain_lift(0, 1, 1), check_kernel);
        case 3:
            return finish("beta3", c, b, rank, spec, chain_lift(1, 1, 1), check_kernel);
        default:
            throw SpecMismatchError("chain index must be 1, 2 or 3");
    }
}

NamedMap build_map(const MapRequest& req, const RingSpecPtr& spec) {
    const std::string& name = req.name;
    if (name == "phi_nk") return map_phi_nk(req.n, req.k, req.rank, spec, req.allow_odd, req.check_kernel);
    if (name == "phi_kn") return map_phi_kn(req.n, req.k, req.rank, spec, req.allow_odd, req.check_kernel);
    if (name == "q") return map_q(req.n, req.rank, spec, req.check_kernel);
    if (name == "varphi") return map_varphi(req.n, req.rank, spec, req.check_kernel);
    if (name == "i") return map_i(req.n, req.rank, spec, req.check_kernel);
    if (name == "j") return map_j(req.n, req.rank, spec, req.check_kernel);
    if (name == "tau") return map_tau(req.rank, spec, req.check_kernel);
    if (name == "alpha1" || name == "alpha2" || name == "alpha3")
        return map_alpha(static_cast<unsigned>(name[5] - '0'), req.rank, spec, req.check_kernel);
    if (name == "beta1" || name == "beta2" || name == "beta3")
        return map_beta(static_cast<unsigned>(name[4] - '0'), req.rank, spec, req.check_kernel);
    throw SpecMismatchError("unknown map name: " + name);
}

}  // namespace schur
