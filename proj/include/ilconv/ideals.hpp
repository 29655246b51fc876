#pragma once

#include "ilconv/natset.hpp"
#include "ilconv/verdict.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace ilconv::ideals {

// The three admissible ideals the deciders support, all decidable on the
// symbolic set algebra:
//
//   fin            the finite sets
//   density0       the sets of natural density zero; within this algebra an
//                  infinite set always contains a full dyadic cell and hence
//                  has positive density, so membership coincides with fin --
//                  the two ideals still differ in how verdicts are certified
//   decomposition  the sets meeting only finitely many dyadic cells
enum class IdealKind { Fin, DensityZero, Decomposition };

class Ideal {
 public:
  static Ideal fin() { return Ideal(IdealKind::Fin, "fin"); }
  static Ideal density_zero() {
    return Ideal(IdealKind::DensityZero, "density0");
  }
  static Ideal decomposition() {
    return Ideal(IdealKind::Decomposition, "decomposition");
  }

  IdealKind kind() const { return kind_; }
  const std::string& name() const { return name_; }

  bool member(const natset::SymbolicNatSet& s) const;

  // Dual filter: M is in F(I) iff the complement of M is in I.
  bool in_filter(const natset::SymbolicNatSet& m) const {
    return member(m.complement());
  }

  bool operator==(const Ideal& o) const { return kind_ == o.kind_; }

 private:
  Ideal(IdealKind k, std::string n) : kind_(k), name_(std::move(n)) {}
  IdealKind kind_;
  std::string name_;
};

// Randomized audit of the ideal axioms for an arbitrary membership rule:
// contains the empty set, closed under union and under subsets (via
// intersections), proper (the full set is no member), and admissible (every
// singleton is a member). Fails carries the offending set; Holds reports the
// trial count. The predicate form exists so tests can feed deliberately
// broken rules through the same auditor.
using Membership = std::function<bool(const natset::SymbolicNatSet&)>;
Verdict check_ideal_axioms(const Membership& member, std::string_view label,
                           std::uint32_t trials, std::uint64_t seed);
Verdict check_ideal_axioms(const Ideal& ideal, std::uint32_t trials,
                           std::uint64_t seed);

// A finite list A_1..A_J of pairwise disjoint ideal members; A_j is empty
// for every j beyond the list.
struct APFamily {
  std::vector<natset::SymbolicNatSet> sets;
};

// Witness for the additive property: B_j differs from A_j by finitely much
// and the union of all B_j is a single ideal member.
struct APDecomposition {
  std::vector<natset::SymbolicNatSet> sets;
  natset::SymbolicNatSet union_of_sets;
};

// Produce an additive-property decomposition for fin and density0. Members
// of either ideal are finite sets here, so the empty candidate family works
// and is what the promotion uses. The decomposition ideal has no supported
// decomposition rule: ApUnsupportedError, never a silent guess. Rejects
// families that are not pairwise disjoint ideal members.
APDecomposition ap_decompose(const Ideal& ideal, const APFamily& family);

// Check a candidate decomposition: sizes match, each symmetric difference
// A_j xor B_j is finite, and the union of the B_j is an ideal member. Fails
// carries the 1-based offending position (0 for the union condition).
Verdict verify_ap_decomposition(const Ideal& ideal, const APFamily& family,
                                const std::vector<natset::SymbolicNatSet>& candidate);

} // namespace ilconv::ideals
