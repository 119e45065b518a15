#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "schur/matrix.hpp"
#include "schur/expr.hpp"
#include "schur/presentation.hpp"

namespace schur {

/// Display name that round-trips through RingSpec::parse.
std::string ring_name(const RingSpecPtr& spec);

nlohmann::ordered_json witness_to_json(const DescentWitness& w);

enum class VerdictStatus { verified, refuted, not_scalar, descent_failed };

std::string to_string(VerdictStatus s);

/// Outcome of one checked claim.  `parameters` echoes the inputs, `evidence`
/// carries whatever was computed (scalars, ranks, divisors, witness data).
/// A refuted or descent_failed verdict always has a "witness" key in its
/// evidence.  Key order is fixed so serialization is byte-stable.
struct Verdict {
    std::string claim_id;
    nlohmann::ordered_json parameters;
    VerdictStatus status = VerdictStatus::verified;
    nlohmann::ordered_json evidence;

    bool ok() const { return status == VerdictStatus::verified; }
    nlohmann::ordered_json to_json() const;
};

/// Random-sampling configuration for claims that admit a sampling mode.
struct RandomMode {
    unsigned trials = 100;
    long entry_bound = 50;
    std::uint64_t seed = 0;
};

/// Uniform entries in [-bound, bound], drawn from `rng` alone so runs with
/// the same seed reproduce exactly.
ExactMatrix random_integer_matrix(std::size_t rows, std::size_t cols, long bound, std::mt19937_64& rng);

/// Product of `steps` random elementary row operations applied to the
/// identity; determinant is always +/-1.
ExactMatrix random_unimodular_matrix(std::size_t dim, unsigned steps, std::mt19937_64& rng);

/// Coefficient relating the top wedge of (first m basis columns, then the
/// section columns) to the standard top wedge: the determinant of those
/// m+n columns.  `basis` must be square of size m+n.
RingElement wedge_comparison_scalar(const ExactMatrix& basis, unsigned m, unsigned n);

/// det(F(f)) == det(f)^e where e = sum of m_i*d_i/n over the direct summands
/// (m_i the summand's rank at n, d_i its degree).  Throws SpecMismatchError
/// if some m_i*d_i is not divisible by n, or if symbolic mode would exceed
/// the budgets.  Symbolic mode (random == nullopt) works over Z[x_11..x_nn];
/// random mode samples integer matrices.
Verdict check_det_identity(const SchurExprPtr& expr, unsigned n,
                           std::optional<RandomMode> random = std::nullopt,
                           std::uint64_t max_symbolic_dim = 20,
                           unsigned max_indeterminates = 9);

/// Consecutive products of the given maps (listed in composition order, so
/// maps[i+1] * maps[i] must vanish).  Refuted with the first nonzero product
/// as witness.
Verdict check_complex(const std::vector<ExactMatrix>& maps,
                      std::vector<std::string> names = {});

/// Exactness of a complex of integer matrices after inverting `primes`:
/// full column rank at the left end, full row rank at the right end,
/// rank(maps[i]) + rank(maps[i+1]) == dim of the middle module at interior
/// nodes, and every elementary divisor a unit once the primes are inverted.
Verdict check_exactness_localized(const std::vector<ExactMatrix>& maps,
                                  const std::vector<unsigned long>& primes,
                                  std::vector<std::string> names = {});

/// Composite scalars of the degree-lowering/raising pair at (n, k): both
/// composites equal (k+n-1)!/2 times the identity.  k must be even.
Verdict verify_phi_scalars(unsigned n, unsigned k, unsigned rank);

/// Multiplication/comultiplication compatibilities in degree 2n: the pair
/// insertion map composes to zero with the square-collapse map, and the
/// splitting section composes to binomial(2n-1, n-1) times the identity.
Verdict verify_square_collapse(unsigned n, unsigned rank);

/// Short exact sequence S^2(W^2) -> S^2(S^2) -> S^4 at the given rank:
/// composite scalar 3, exactness, and a splitting over `spec` given by an
/// explicit change of basis (refuted with the obstructing divisor when 3 is
/// not invertible).
Verdict verify_symmetric_square_splitting(unsigned rank, const RingSpecPtr& spec);

/// The four-term chain W^4 -> S^2(W^2) -> S^2(S^2) -> S^4 and its reverse:
/// complexes, scalar-3 composites, homotopy image statements, exactness over
/// `spec`, an explicit iso W^4 (+) S^2(S^2) == S^2(W^2) (+) S^4, and the
/// matching binomial identity.
Verdict verify_wedge_square_chain(unsigned rank, const RingSpecPtr& spec);

/// Top-wedge factorization through a free submodule F' and quotient F'':
/// for random unimodular bases the comparison scalar u is a unit and is
/// unchanged when the chosen section is perturbed by maps into F'.
Verdict check_wedge_factorization(unsigned m, unsigned n, unsigned trials, std::uint64_t seed);

/// Tabulates the composite scalars at rank n for all n <= max_n and even
/// k <= max_k against (k+n-1)!/2.  Reports, never asserts: rows where the
/// kernel condition was too large to check are flagged kernel_checked=false.
/// `kernel_budget` caps tuple*term work for the descent kernel check.
Verdict explore_phi_conjecture(unsigned max_n, unsigned max_k,
                               std::uint64_t kernel_budget = 100'000'000);

/// binomial(n,4) + binomial(binomial(n+1,2)+1, 2)
///   == binomial(binomial(n,2)+1, 2) + binomial(n+3,4) for n = 1..n_max,
/// evaluated through the rank function on the four module expressions.
Verdict check_rank_identity(unsigned n_max);

}  // namespace schur
