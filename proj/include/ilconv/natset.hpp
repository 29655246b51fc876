#pragma once

#include "ilconv/rational.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ilconv::natset {

// The positive naturals are partitioned into dyadic cells: cell j holds the
// numbers whose 2-adic valuation is j-1, i.e. the odd multiples of 2^(j-1).
//
//   cell 1 = {1, 3, 5, 7, ...}        density 1/2
//   cell 2 = {2, 6, 10, 14, ...}      density 1/4
//   cell j = {2^(j-1) * odd}          density 2^-j
//
// Every cell is infinite, the densities are exact, and cell_of is O(1), which
// is what the symbolic set algebra below is built on.
std::uint32_t cell_of(std::uint64_t n);

// A finite or cofinite collection of cell indices. This tiny algebra is
// closed under union, intersection and complement, and carries the exact
// density bookkeeping for SymbolicNatSet.
class CellSelection {
 public:
  // Empty selection (finite, no cells).
  CellSelection() = default;

  static CellSelection none();
  static CellSelection every();
  static CellSelection of(std::vector<std::uint32_t> cells);      // finite
  static CellSelection all_but(std::vector<std::uint32_t> cells); // cofinite

  bool cofinite() const { return cofinite_; }
  // The listed indices: members when finite, exceptions when cofinite.
  // Always sorted and duplicate-free.
  const std::vector<std::uint32_t>& listed() const { return cells_; }

  bool contains(std::uint32_t j) const;
  bool empty() const { return !cofinite_ && cells_.empty(); }

  CellSelection unite(const CellSelection& o) const;
  CellSelection intersect(const CellSelection& o) const;
  CellSelection complement() const;

  // Exact density of the union of the selected cells: sum of 2^-j for a
  // finite selection, 1 minus the excluded sum for a cofinite one.
  Rational density() const;

  bool operator==(const CellSelection& o) const = default;

 private:
  CellSelection(bool cofinite, std::vector<std::uint32_t> cells);

  bool cofinite_ = false;
  std::vector<std::uint32_t> cells_;
};

// A set of positive naturals of the form
//
//   (union of the cells in `base`  minus  `minus`)  union  `plus`
//
// with `plus` and `minus` finite. The representation is kept normalized --
// plus lies outside the base cells, minus inside them -- which makes it
// canonical: two SymbolicNatSets are extensionally equal iff their fields
// are equal. The family is closed under union, intersection, complement and
// symmetric difference, membership is O(log) in the explicit corrections,
// and density is exact (finite corrections never move it).
class SymbolicNatSet {
 public:
  SymbolicNatSet() = default; // empty set

  static SymbolicNatSet empty();
  static SymbolicNatSet all();
  static SymbolicNatSet cell(std::uint32_t j);
  static SymbolicNatSet from_cells(CellSelection sel);
  static SymbolicNatSet finite(std::vector<std::uint64_t> elements);

  bool contains(std::uint64_t n) const;

  SymbolicNatSet unite(const SymbolicNatSet& o) const;
  SymbolicNatSet intersect(const SymbolicNatSet& o) const;
  SymbolicNatSet complement() const;
  SymbolicNatSet symmetric_difference(const SymbolicNatSet& o) const;
  SymbolicNatSet with(std::uint64_t n) const;    // insert one element
  SymbolicNatSet without(std::uint64_t n) const; // erase one element

  // Exact natural density. Only the base cells contribute.
  Rational density() const;

  // The cells this set meets. Removing finitely many elements never empties
  // a (infinite) base cell, so only `plus` can extend the base selection.
  CellSelection cells_hit() const;

  // True iff the set is finite, i.e. has no base cells. Within this algebra
  // that is also exactly the density-zero condition.
  bool is_finite() const { return base_.empty(); }
  bool is_empty() const { return base_.empty() && plus_.empty(); }

  // All members n <= limit, ascending.
  std::vector<std::uint64_t> enumerate_prefix(std::uint64_t limit) const;

  const CellSelection& base() const { return base_; }
  const std::vector<std::uint64_t>& plus() const { return plus_; }
  const std::vector<std::uint64_t>& minus() const { return minus_; }

  // Canonical expression in the scenario grammar, e.g.
  // "(D(1)|D(2) & !finite{6}) | finite{4}". Reparsing it yields this set.
  std::string to_expr() const;

  bool operator==(const SymbolicNatSet& o) const = default;

 private:
  SymbolicNatSet(CellSelection base, std::vector<std::uint64_t> plus,
                 std::vector<std::uint64_t> minus);

  template <typename Op>
  static SymbolicNatSet combine(const SymbolicNatSet& a,
                                const SymbolicNatSet& b,
                                const CellSelection& base, Op op);

  CellSelection base_;
  std::vector<std::uint64_t> plus_;
  std::vector<std::uint64_t> minus_;
};

inline SymbolicNatSet operator|(const SymbolicNatSet& a,
                                const SymbolicNatSet& b) {
  return a.unite(b);
}
inline SymbolicNatSet operator&(const SymbolicNatSet& a,
                                const SymbolicNatSet& b) {
  return a.intersect(b);
}
inline SymbolicNatSet operator^(const SymbolicNatSet& a,
                                const SymbolicNatSet& b) {
  return a.symmetric_difference(b);
}
inline SymbolicNatSet operator~(const SymbolicNatSet& a) {
  return a.complement();
}

} // namespace ilconv::natset
