#pragma once

#include "ilconv/points.hpp"
#include "ilconv/rational.hpp"
#include "ilconv/verdict.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace ilconv::mls {

// Declared topological nature of a point. For an isolated point the radius
// is one whose ball around the point contains nothing else.
struct TopologyCert {
  bool isolated = false;
  Rational radius; // meaningful when isolated
};

// Space-certified eventual behaviour of the per-cell deviation
// |delta(x_j, target) - delta(target, target)| of a tail rule:
// constant from some cell on, or strictly inside (0, 1/j) forever.
struct TailDeviationCert {
  enum class Kind { EventuallyConstant, DecaysBelow };
  Kind kind = Kind::EventuallyConstant;
  Rational constant;     // EventuallyConstant only
  bool positive = false; // DecaysBelow: deviations also known to be > 0
};

// A metric-like space over symbolic points: a named carrier predicate, an
// exact symmetric distance with delta(x,x) not forced to zero, a default
// sample for the axiom sweeps, and optional hooks the sequence machinery
// uses for certified answers:
//
//   ball_pick        a member of the punctured ball around a center, used to
//                    build approach sequences
//   eventual_pick    the point ball_pick settles on for small radii, when
//                    it settles
//   tail_deviation   eventual deviation certificate for a tail rule
//   topology         declared isolated/limit nature of a point
//
// Spaces are cheap to copy (shared immutable state).
class Space {
 public:
  const std::string& name() const;
  bool in_sort(const PointValue& x) const;

  // Exact distance; throws SortError when either point is outside the
  // carrier.
  Rational delta(const PointValue& x, const PointValue& y) const;

  const std::vector<PointValue>& sample() const;

  bool has_ball_pick() const;
  std::optional<PointValue> ball_pick(const PointValue& center,
                                      const Rational& radius) const;
  std::optional<PointValue> eventual_pick(const PointValue& center) const;

  // True when an approach tail around this center is defined at every scale.
  bool approach_valid(const PointValue& center) const;
  // True when integer points of every index lie in the carrier.
  bool integer_ramp_valid() const;

  std::optional<TailDeviationCert> tail_deviation(
      const conv::TailRule& tail, const PointValue& target) const;

  std::optional<TopologyCert> topology(const PointValue& x) const;

  // delta is 0 for equal irrationals, 2 between integers, 3 otherwise; the
  // carrier is every point value.
  static Space example1();

  // {0} and {1/j : j >= 1} with the absolute-difference metric.
  static Space harmonic();

  // Finite space from an explicit symmetric table. `points` orders the
  // carrier; `matrix[i][k]` is delta(points[i], points[k]). Throws
  // std::invalid_argument on shape or symmetry violations (entries may be
  // arbitrary rationals; the axiom checkers judge them).
  static Space from_table(std::string name, std::vector<PointValue> points,
                          std::vector<std::vector<Rational>> matrix);

  struct Impl;
  explicit Space(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

 private:
  std::shared_ptr<const Impl> impl_;
};

// Exhaustive axiom sweeps over a sample, weakest to strongest. Pairs are
// visited in column-major order ((i,k) by k then i) and triples likewise, so
// the reported witness is the first violation in that order.
//
//   metric-like  d(x,y)=0 implies x=y; symmetry; triangle
//   partial      indistinguishability (x=y iff d(x,x)=d(x,y)=d(y,y));
//                small self-distance (0 <= d(x,x) <= d(x,y)); symmetry;
//                the self-adjusted triangle d(x,y) <= d(x,z)+d(z,y)-d(z,z)
//   metric       d(x,x)=0 per point first, then separation, symmetry,
//                triangle
Verdict check_metric_like_axioms(const Space& space,
                                 const std::vector<PointValue>& sample);
Verdict check_partial_metric_axioms(const Space& space,
                                    const std::vector<PointValue>& sample);
Verdict check_metric_axioms(const Space& space,
                            const std::vector<PointValue>& sample);

struct BallSpec {
  PointValue center;
  Rational radius;
};

// Membership in the open ball: |delta(x, center) - delta(center, center)|
// strictly below the radius.
bool in_ball(const Space& space, const BallSpec& ball, const PointValue& x);

enum class PointClass { Isolated, LimitPoint, Undetermined };

struct Classification {
  PointClass cls = PointClass::Undetermined;
  Rational radius;                    // isolating radius when Isolated
  std::vector<PointValue> witnesses;  // distinct ball members when LimitPoint
  std::uint64_t probed = 0;
};

// Classify via the space's topology certificate when present, otherwise
// relative to the probe: a point with no zero-deviation neighbour in the
// probe is isolated at the smallest positive deviation seen; a
// zero-deviation neighbour witnesses every radius. Limit points exhibit a
// witness per radius 1/j, j <= j_probe.
Classification classify_point(const Space& space, const PointValue& x,
                              const std::vector<PointValue>& probe,
                              std::uint32_t j_probe);

// Pairwise separation sweep: for each sample pair, search centers across the
// sample and radii among the realized deviation values and their midpoints
// for a ball containing exactly one of the two. Holds carries the table of
// separating balls, Fails the first inseparable pair.
Verdict check_t0(const Space& space, const std::vector<PointValue>& sample);

} // namespace ilconv::mls
