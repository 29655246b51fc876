#pragma once

#include "ilconv/natset.hpp"
#include "ilconv/rational.hpp"
#include "ilconv/sequence.hpp"
#include "ilconv/verdict.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

// Brute-force finite-horizon cross-checks. Everything here recomputes
// answers directly on a prefix of the naturals: trial division instead of
// bit scans, per-index delta evaluation instead of set algebra. Agreement
// with the symbolic layer is evidence precisely because no code is shared.
namespace ilconv::oracle {

using Predicate = std::function<bool(std::uint64_t)>;

// Membership over [1, N] frozen into a bit vector, with a note saying what
// was scanned.
struct PrefixWitness {
  std::uint64_t horizon = 0;
  std::vector<bool> bits; // bits[n-1] for n in [1, horizon]
  std::string note;

  bool contains(std::uint64_t n) const {
    return n >= 1 && n <= horizon && bits[n - 1];
  }
};

PrefixWitness scan_prefix(const Predicate& pred, std::uint64_t horizon,
                          std::string note);

// Dyadic cell index by trial division.
std::uint32_t cell_index(std::uint64_t n);

// The first count deviations |delta(x_n, x0) - delta(x0, x0)|, one exact
// value per index.
std::vector<Rational> scan_deviations(const conv::CellSequence& seq,
                                      const mls::PointValue& x0,
                                      std::uint64_t count);

// Pointwise comparison of a symbolic set against a predicate on [1, N].
// Fails carries the first disagreeing index.
Verdict equiv_on_prefix(const natset::SymbolicNatSet& s, const Predicate& pred,
                        std::uint64_t horizon);

// Exact |{ n <= N : pred(n) }| / N.
Rational empirical_density(const Predicate& pred, std::uint64_t horizon);
Rational empirical_density(const natset::SymbolicNatSet& s,
                           std::uint64_t horizon);

} // namespace ilconv::oracle
