#include "ilconv/ideals.hpp"

#include "ilconv/errors.hpp"

#include <random>

namespace ilconv::ideals {

bool Ideal::member(const natset::SymbolicNatSet& s) const {
  switch (kind_) {
    case IdealKind::Fin: return s.is_finite();
    case IdealKind::DensityZero: return s.density() == 0;
    case IdealKind::Decomposition: return !s.cells_hit().cofinite();
  }
  return false;
}

namespace {

using natset::SymbolicNatSet;

// Mixed generator: finite sets, small cell unions, their complements, and
// sets with explicit corrections. Biased toward likely ideal members so the
// closure laws get exercised on actual member pairs.
SymbolicNatSet random_set(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> shape(0, 5);
  std::uniform_int_distribution<std::uint32_t> cell(1, 10);
  std::uniform_int_distribution<std::uint64_t> nat(1, 1u << 12);
  std::uniform_int_distribution<int> count(0, 4);

  const int s = shape(rng);
  if (s <= 1) { // finite set
    std::vector<std::uint64_t> els;
    for (int i = count(rng); i > 0; --i) els.push_back(nat(rng));
    return SymbolicNatSet::finite(std::move(els));
  }
  std::vector<std::uint32_t> cells;
  for (int i = count(rng); i > 0; --i) cells.push_back(cell(rng));
  SymbolicNatSet base =
      SymbolicNatSet::from_cells(natset::CellSelection::of(std::move(cells)));
  if (s == 3) base = base.complement();
  for (int i = count(rng); i > 0; --i) {
    const std::uint64_t n = nat(rng);
    base = (i % 2) ? base.with(n) : base.without(n);
  }
  return base;
}

} // namespace

Verdict check_ideal_axioms(const Membership& member, std::string_view label,
                           std::uint32_t trials, std::uint64_t seed) {
  const std::string who = std::string(label);
  if (!member(SymbolicNatSet::empty()))
    return Verdict::fails(
        SymbolicSetCert{SymbolicNatSet::empty(), std::nullopt},
        who + ": empty set is not a member");
  if (member(SymbolicNatSet::all()))
    return Verdict::fails(SymbolicSetCert{SymbolicNatSet::all(), std::nullopt},
                          who + ": improper, contains the full set");

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> nat(1, 1u << 12);

  std::uint64_t checked = 0;
  for (std::uint32_t t = 0; t < trials; ++t) {
    // admissibility: singletons, starting from {1} so the smallest
    // counterexamples are found deterministically
    const std::uint64_t single = (t == 0) ? 1 : nat(rng);
    if (!member(SymbolicNatSet::finite({single})))
      return Verdict::fails(
          SymbolicSetCert{SymbolicNatSet::finite({single}), std::nullopt},
          who + ": not admissible, singleton {" + std::to_string(single) +
              "} rejected");

    const SymbolicNatSet s = random_set(rng);
    const SymbolicNatSet t2 = random_set(rng);
    if (member(s)) {
      const SymbolicNatSet sub = s.intersect(t2);
      if (!member(sub))
        return Verdict::fails(
            SymbolicSetCert{sub, std::nullopt},
            who + ": not closed under subsets, " + sub.to_expr() +
                " below member " + s.to_expr());
      if (member(t2) && !member(s.unite(t2)))
        return Verdict::fails(
            SymbolicSetCert{s.unite(t2), std::nullopt},
            who + ": not closed under union, " + s.to_expr() + " | " +
                t2.to_expr());
    }
    ++checked;
  }
  return Verdict::holds(SweepCount{0, 0, checked},
                        who + ": ideal axioms held over " +
                            std::to_string(checked) + " randomized trials");
}

Verdict check_ideal_axioms(const Ideal& ideal, std::uint32_t trials,
                           std::uint64_t seed) {
  return check_ideal_axioms(
      [&ideal](const SymbolicNatSet& s) { return ideal.member(s); },
      ideal.name(), trials, seed);
}

namespace {

void validate_family(const Ideal& ideal, const APFamily& family) {
  for (std::size_t i = 0; i < family.sets.size(); ++i) {
    if (!ideal.member(family.sets[i]))
      throw PreconditionError("family member " + std::to_string(i + 1) +
                              " is not in the ideal " + ideal.name());
    for (std::size_t k = i + 1; k < family.sets.size(); ++k)
      if (!family.sets[i].intersect(family.sets[k]).is_empty())
        throw PreconditionError("family members " + std::to_string(i + 1) +
                                " and " + std::to_string(k + 1) +
                                " are not disjoint");
  }
}

} // namespace

APDecomposition ap_decompose(const Ideal& ideal, const APFamily& family) {
  if (ideal.kind() == IdealKind::Decomposition)
    throw ApUnsupportedError(
        "no additive-property decomposition rule for the decomposition ideal");
  validate_family(ideal, family);
  // fin and density0 members are finite sets, so each A_j already differs
  // from the empty set by finitely much and the empty union is a member.
  APDecomposition out;
  out.sets.assign(family.sets.size(), natset::SymbolicNatSet::empty());
  out.union_of_sets = natset::SymbolicNatSet::empty();
  return out;
}

Verdict verify_ap_decomposition(
    const Ideal& ideal, const APFamily& family,
    const std::vector<natset::SymbolicNatSet>& candidate) {
  if (candidate.size() != family.sets.size())
    return Verdict::fails(IndexWitness{0, "size mismatch"},
                          "candidate list has " +
                              std::to_string(candidate.size()) +
                              " sets, family has " +
                              std::to_string(family.sets.size()));
  natset::SymbolicNatSet all_b = natset::SymbolicNatSet::empty();
  for (std::size_t j = 0; j < candidate.size(); ++j) {
    const auto diff = family.sets[j].symmetric_difference(candidate[j]);
    if (!diff.is_finite())
      return Verdict::fails(
          IndexWitness{j + 1, "A_j xor B_j infinite"},
          "symmetric difference at position " + std::to_string(j + 1) +
              " is infinite: " + diff.to_expr());
    all_b = all_b.unite(candidate[j]);
  }
  if (!ideal.member(all_b))
    return Verdict::fails(IndexWitness{0, "union of B_j not in ideal"},
                          "union of the candidate sets is outside " +
                              ideal.name() + ": " + all_b.to_expr());
  return Verdict::holds(
      SweepCount{0, 0, candidate.size()},
      "valid decomposition across " + std::to_string(candidate.size()) +
          " sets; union " + all_b.to_expr() + " in " + ideal.name());
}

} // namespace ilconv::ideals
