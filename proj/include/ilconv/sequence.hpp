#pragma once

#include "ilconv/natset.hpp"
#include "ilconv/points.hpp"
#include "ilconv/rational.hpp"
#include "ilconv/space.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace ilconv::conv {

// Probe depths shared by all deciders. j_probe bounds the cells whose
// deviations are evaluated exactly (overrides can push the effective bound
// higher); horizon bounds index-level prefix scans used for re-verification.
struct Params {
  std::uint32_t j_probe = 64;
  std::uint64_t horizon = 4096;
};

// A sequence whose value depends only on the dyadic cell of the index:
// x_n = value(cell_of(n)). The value of cell j is the override when one is
// declared, otherwise the tail rule:
//
//   ConstPoint p       -> p
//   IntegerRamp        -> the integer point j
//   HarmonicApproach c -> the space's ball pick at radius 1/j around c,
//                         a member of the punctured ball (so its deviation
//                         from c is strictly below 1/j)
//
// Total over all n >= 1, immutable, cheap to copy. Construction validates
// the pieces against the space and throws PreconditionError on a tail the
// space cannot carry or a point outside its sort.
class CellSequence {
 public:
  CellSequence(mls::Space space, std::map<std::uint32_t, mls::PointValue> overrides,
               TailRule tail);

  const mls::Space& space() const { return space_; }
  const std::map<std::uint32_t, mls::PointValue>& overrides() const {
    return overrides_;
  }
  const TailRule& tail() const { return tail_; }

  mls::PointValue value_on_cell(std::uint32_t j) const;
  mls::PointValue value_at(std::uint64_t n) const {
    return value_on_cell(natset::cell_of(n));
  }

  // 0 when there are no overrides.
  std::uint32_t max_override_cell() const;

  // Grammar form, e.g. "cellwise { 2 -> rat 1/2; default integer-ramp }".
  std::string describe() const;

 private:
  mls::Space space_;
  std::map<std::uint32_t, mls::PointValue> overrides_;
  TailRule tail_;
};

// cell_of for indices beyond 64 bits; subsequence extraction reaches
// indices around 2^k for cell k.
std::uint32_t cell_of_index(const BigInt& n);

// |delta(x_n, target) - delta(target, target)|, exactly.
Rational deviation(const CellSequence& seq, const mls::PointValue& target,
                   std::uint64_t n);
Rational deviation_big(const CellSequence& seq, const mls::PointValue& target,
                       const BigInt& n);
// The same quantity as a function of the cell (sequences are cell-constant).
Rational cell_deviation(const CellSequence& seq, const mls::PointValue& target,
                        std::uint32_t cell);

// Exact per-cell deviations up to j_eff plus the space-certified behaviour
// of the remaining tail. tail == nullopt means the cells beyond j_eff are
// uncertified; deciders that would need them refuse loudly instead of
// guessing.
struct DeviationProfile {
  std::uint32_t j_eff = 0;
  std::vector<Rational> dev; // dev[j-1] for cell j, j <= j_eff
  std::optional<mls::TailDeviationCert> tail;

  const Rational& at(std::uint32_t cell) const { return dev.at(cell - 1); }
};

// j_eff = max(params.j_probe, highest override cell, 1). A ConstPoint tail
// is certified directly (its deviation is one exact value); ramp and
// approach tails defer to the space's certificate.
DeviationProfile build_profile(const CellSequence& seq,
                               const mls::PointValue& target,
                               const Params& params);

} // namespace ilconv::conv
