#pragma once

#include "schur/presentation.hpp"

namespace schur {

/// A lift failed its kernel check: the offending pure tensor and the nonzero
/// residual are kept for reporting.
class DescentError : public std::runtime_error {
public:
    DescentError(std::string map_name, DescentWitness witness);
    const std::string& map_name() const { return map_name_; }
    const DescentWitness& witness() const { return witness_; }

private:
    std::string map_name_;
    DescentWitness witness_;
};

/// A map between two constructions, carried by a permutation-sum lift on the
/// common tensor power together with the matrix it induces on the quotients.
struct NamedMap {
    std::string name;
    SchurExprPtr src;
    SchurExprPtr dst;
    unsigned rank;
    PermutationSum lift;
    ExactMatrix matrix;
    bool kernel_checked = true;
};

// Lifts, all on F^{⊗(n·k)} resp. F^{⊗2n}.  The sym->wedge direction sums
// plain permutations; the wedge->sym direction weights them by sign.
PermutationSum lift_sym_to_wedge(unsigned n, unsigned k);
PermutationSum lift_wedge_to_sym(unsigned n, unsigned k);
/// One permutation per n-subset of {1..2n} containing the first slot.
PermutationSum lift_splitting(unsigned n);
/// Lift of the map placing a squared wedge pair inside a symmetric square.
PermutationSum lift_pair_insertion(unsigned n);
/// Lift of the retraction extracting wedge pairs, one a against one b.
PermutationSum lift_pair_extraction(unsigned n);

// S^n(S^k F) -> S^k(∧^n F); k must be even unless allow_odd, and with
// allow_odd the kernel check may legitimately fail (DescentError).
NamedMap map_phi_nk(unsigned n, unsigned k, unsigned rank, const RingSpecPtr& spec, bool allow_odd = false,
                    bool check_kernel = true);
// S^k(∧^n F) -> S^n(S^k F), the signed direction.
NamedMap map_phi_kn(unsigned n, unsigned k, unsigned rank, const RingSpecPtr& spec, bool allow_odd = false,
                    bool check_kernel = true);
// Multiplication S^2(S^n F) -> S^{2n} F.
NamedMap map_q(unsigned n, unsigned rank, const RingSpecPtr& spec, bool check_kernel = true);
// Splitting S^{2n} F -> S^2(S^n F) with q ∘ varphi = C(2n-1, n-1).
NamedMap map_varphi(unsigned n, unsigned rank, const RingSpecPtr& spec, bool check_kernel = true);
// S^2(∧^2 F) ⊗ S^2(S^{n-2} F) -> S^2(S^n F), n >= 3.
NamedMap map_i(unsigned n, unsigned rank, const RingSpecPtr& spec, bool check_kernel = true);
// S^2(S^n F) -> S^2(∧^2 F) ⊗ S^2(S^{n-2} F), n >= 3.
NamedMap map_j(unsigned n, unsigned rank, const RingSpecPtr& spec, bool check_kernel = true);
// The (2,2) sym->wedge map under its own name.
NamedMap map_tau(unsigned rank, const RingSpecPtr& spec, bool check_kernel = true);
// Four-step chains ∧^4 F -> S^2(∧^2 F) -> S^2(S^2 F) -> S^4 F and back.
NamedMap map_alpha(unsigned index, unsigned rank, const RingSpecPtr& spec, bool check_kernel = true);
NamedMap map_beta(unsigned index, unsigned rank, const RingSpecPtr& spec, bool check_kernel = true);

struct MapRequest {
    std::string name;
    unsigned n = 2;
    unsigned k = 2;
    unsigned rank = 2;
    bool allow_odd = false;
    bool check_kernel = true;
};

/// Dispatch by name: phi_nk, phi_kn, q, varphi, i, j, tau, alpha1..alpha3,
/// beta1..beta3.  Unknown names raise SpecMismatchError.
NamedMap build_map(const MapRequest& req, const RingSpecPtr& spec);

}  // namespace schur
