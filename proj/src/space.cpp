#include "ilconv/space.hpp"

#include "ilconv/errors.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <utility>

namespace ilconv::mls {

using conv::TailRule;

struct Space::Impl {
  std::string name;
  std::function<bool(const PointValue&)> in_sort;
  std::function<Rational(const PointValue&, const PointValue&)> delta;
  std::vector<PointValue> sample;
  std::function<std::optional<PointValue>(const PointValue&, const Rational&)>
      ball_pick; // null when the space offers no pick
  std::function<std::optional<PointValue>(const PointValue&)> eventual_pick;
  std::function<bool(const PointValue&)> approach_valid;
  bool ramp_ok = false;
  std::function<std::optional<TailDeviationCert>(const TailRule&,
                                                 const PointValue&)>
      tail_deviation;
  std::function<std::optional<TopologyCert>(const PointValue&)> topology;
};

const std::string& Space::name() const { return impl_->name; }

bool Space::in_sort(const PointValue& x) const { return impl_->in_sort(x); }

Rational Space::delta(const PointValue& x, const PointValue& y) const {
  if (!impl_->in_sort(x))
    throw SortError("point " + x.to_string() + " is outside " + impl_->name);
  if (!impl_->in_sort(y))
    throw SortError("point " + y.to_string() + " is outside " + impl_->name);
  return impl_->delta(x, y);
}

const std::vector<PointValue>& Space::sample() const { return impl_->sample; }

bool Space::has_ball_pick() const {
  return static_cast<bool>(impl_->ball_pick);
}

std::optional<PointValue> Space::ball_pick(const PointValue& center,
                                           const Rational& radius) const {
  if (!impl_->ball_pick || radius <= 0) return std::nullopt;
  if (!impl_->in_sort(center))
    throw SortError("point " + center.to_string() + " is outside " +
                    impl_->name);
  return impl_->ball_pick(center, radius);
}

std::optional<PointValue> Space::eventual_pick(const PointValue& center) const {
  if (!impl_->eventual_pick) return std::nullopt;
  return impl_->eventual_pick(center);
}

bool Space::approach_valid(const PointValue& center) const {
  if (!impl_->ball_pick || !impl_->in_sort(center)) return false;
  return impl_->approach_valid ? impl_->approach_valid(center) : false;
}

bool Space::integer_ramp_valid() const { return impl_->ramp_ok; }

std::optional<TailDeviationCert> Space::tail_deviation(
    const TailRule& tail, const PointValue& target) const {
  if (!impl_->tail_deviation) return std::nullopt;
  return impl_->tail_deviation(tail, target);
}

std::optional<TopologyCert> Space::topology(const PointValue& x) const {
  if (!impl_->topology || !impl_->in_sort(x)) return std::nullopt;
  return impl_->topology(x);
}

namespace {

Rational deviation_from(const Space::Impl& sp, const PointValue& center,
                        const PointValue& x) {
  const Rational d = sp.delta(x, center) - sp.delta(center, center);
  return d < 0 ? Rational(-d) : d;
}

} // namespace

Space Space::example1() {
  auto impl = std::make_shared<Impl>();
  impl->name = "example1";
  impl->in_sort = [](const PointValue&) { return true; };
  // case order is deliberate: equal irrationals, then integer pairs, then
  // everything else (so equal non-integer rationals land in the 3 branch)
  impl->delta = [](const PointValue& x, const PointValue& y) -> Rational {
    if (x == y && x.is_irrational()) return 0;
    if (x.is_integer() && y.is_integer()) return 2;
    return 3;
  };
  // the leading 1, 1/2, 1/3 pin down which witnesses the axiom sweeps find
  // first; then the remaining integers, rationals and irrational symbols
  impl->sample = {
      PointValue::integer(1),
      PointValue::rational(make_rational(1, 2)),
      PointValue::rational(make_rational(1, 3)),
      PointValue::integer(0),
      PointValue::integer(2),
      PointValue::integer(3),
      PointValue::integer(4),
      PointValue::integer(5),
      PointValue::integer(6),
      PointValue::integer(7),
      PointValue::integer(8),
      PointValue::integer(9),
      PointValue::rational(make_rational(2, 3)),
      PointValue::rational(make_rational(1, 4)),
      PointValue::rational(make_rational(3, 4)),
      PointValue::rational(make_rational(1, 5)),
      PointValue::rational(make_rational(2, 5)),
      PointValue::rational(make_rational(3, 5)),
      PointValue::rational(make_rational(4, 5)),
      PointValue::rational(make_rational(1, 6)),
      PointValue::irrational("sqrt2"),
      PointValue::irrational("sqrt3"),
      PointValue::irrational("pi"),
      PointValue::irrational("e"),
      PointValue::irrational("phi"),
  };
  impl->ball_pick = [](const PointValue& c,
                       const Rational& r) -> std::optional<PointValue> {
    // integers all sit at mutual deviation 0, as does everything around a
    // rational center; irrational centers have deviation 3 to all others
    if (c.is_integer()) return PointValue::integer(c.int_value() + 1);
    if (c.is_rational()) return PointValue::integer(0);
    if (r > 3) return PointValue::integer(0);
    return std::nullopt;
  };
  impl->eventual_pick = [](const PointValue& c) -> std::optional<PointValue> {
    if (c.is_integer()) return PointValue::integer(c.int_value() + 1);
    if (c.is_rational()) return PointValue::integer(0);
    return std::nullopt; // picks around an irrational die below radius 3
  };
  impl->approach_valid = [](const PointValue& c) { return !c.is_irrational(); };
  impl->ramp_ok = true;
  auto weak = std::weak_ptr<const Impl>(impl);
  impl->tail_deviation =
      [weak](const TailRule& tail,
             const PointValue& target) -> std::optional<TailDeviationCert> {
    auto sp = weak.lock();
    if (!sp) return std::nullopt;
    if (tail.kind == TailRule::Kind::IntegerRamp) {
      // delta(j, target) does not depend on the integer j, so the deviation
      // is the same constant on every cell
      const std::uint64_t rep =
          target.is_integer() ? target.int_value() + 1 : 0;
      const Rational c =
          deviation_from(*sp, target, PointValue::integer(rep));
      return TailDeviationCert{TailDeviationCert::Kind::EventuallyConstant, c,
                               c > 0};
    }
    if (tail.kind == TailRule::Kind::HarmonicApproach) {
      auto pick = sp->eventual_pick(tail.point);
      if (!pick) return std::nullopt;
      const Rational c = deviation_from(*sp, target, *pick);
      return TailDeviationCert{TailDeviationCert::Kind::EventuallyConstant, c,
                               c > 0};
    }
    return std::nullopt;
  };
  impl->topology = [](const PointValue& x) -> std::optional<TopologyCert> {
    if (x.is_irrational()) return TopologyCert{true, 1};
    // every ball around an integer holds all integers; every ball around a
    // non-integer rational holds the whole space
    return TopologyCert{false, 0};
  };
  return Space(std::move(impl));
}

namespace {

// Index m of a harmonic point 1/m; 0 itself has no index.
std::optional<std::uint64_t> harmonic_index(const PointValue& x) {
  if (x == PointValue::integer(1)) return 1;
  if (x.is_rational() &&
      boost::multiprecision::numerator(x.rat_value()) == 1) {
    const BigInt den = boost::multiprecision::denominator(x.rat_value());
    if (den <= BigInt(UINT64_MAX)) return den.convert_to<std::uint64_t>();
  }
  return std::nullopt;
}

PointValue harmonic_point(std::uint64_t m) {
  if (m == 1) return PointValue::integer(1);
  return PointValue::rational(Rational(BigInt(1), BigInt(m)));
}

} // namespace

Space Space::harmonic() {
  auto impl = std::make_shared<Impl>();
  impl->name = "harmonic";
  impl->in_sort = [](const PointValue& x) {
    return x == PointValue::integer(0) || harmonic_index(x).has_value();
  };
  impl->delta = [](const PointValue& x, const PointValue& y) -> Rational {
    const Rational d = x.numeric() - y.numeric();
    return d < 0 ? Rational(-d) : d;
  };
  impl->sample.push_back(PointValue::integer(0));
  for (std::uint64_t m = 1; m <= 20; ++m)
    impl->sample.push_back(harmonic_point(m));
  impl->ball_pick = [](const PointValue& c,
                       const Rational& r) -> std::optional<PointValue> {
    if (c == PointValue::integer(0)) {
      // least index above 1/r: the first point 1/(j+1) strictly inside
      const BigInt num = boost::multiprecision::numerator(r);
      const BigInt den = boost::multiprecision::denominator(r);
      BigInt jp1 = den / num + 1;
      if (jp1 < 2) jp1 = 2;
      if (jp1 > BigInt(UINT64_MAX)) return std::nullopt;
      return harmonic_point(jp1.convert_to<std::uint64_t>());
    }
    const auto m = harmonic_index(c);
    if (!m) return std::nullopt;
    // nearest neighbour of 1/m is 1/(m+1) at distance 1/(m(m+1))
    const Rational gap(BigInt(1), BigInt(*m) * BigInt(*m + 1));
    if (gap < r) return harmonic_point(*m + 1);
    return std::nullopt;
  };
  impl->eventual_pick = [](const PointValue&) -> std::optional<PointValue> {
    return std::nullopt; // picks never settle (center 0) or run out (1/m)
  };
  impl->approach_valid = [](const PointValue& c) {
    return c == PointValue::integer(0);
  };
  impl->ramp_ok = false;
  impl->tail_deviation =
      [](const TailRule& tail,
         const PointValue& target) -> std::optional<TailDeviationCert> {
    if (tail.kind == TailRule::Kind::HarmonicApproach &&
        tail.point == PointValue::integer(0) &&
        target == PointValue::integer(0)) {
      // pick at radius 1/j is 1/(j+1): a true metric, so the deviation is
      // the distance itself -- strictly between 0 and 1/j
      return TailDeviationCert{TailDeviationCert::Kind::DecaysBelow, 0, true};
    }
    return std::nullopt;
  };
  impl->topology = [](const PointValue& x) -> std::optional<TopologyCert> {
    if (x == PointValue::integer(0)) return TopologyCert{false, 0};
    const auto m = harmonic_index(x);
    if (!m) return std::nullopt;
    return TopologyCert{true, Rational(BigInt(1), BigInt(*m) * BigInt(*m + 1))};
  };
  return Space(std::move(impl));
}

Space Space::from_table(std::string name, std::vector<PointValue> points,
                        std::vector<std::vector<Rational>> matrix) {
  if (points.empty()) throw std::invalid_argument("table needs points");
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t k = i + 1; k < points.size(); ++k)
      if (points[i] == points[k])
        throw std::invalid_argument("duplicate table point " +
                                    points[i].to_string());
  if (matrix.size() != points.size())
    throw std::invalid_argument("table matrix is not square");
  for (const auto& row : matrix)
    if (row.size() != points.size())
      throw std::invalid_argument("table matrix is not square");
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t k = 0; k < points.size(); ++k)
      if (matrix[i][k] != matrix[k][i])
        throw std::invalid_argument("table is not symmetric at " +
                                    points[i].to_string() + "," +
                                    points[k].to_string());

  auto impl = std::make_shared<Impl>();
  impl->name = std::move(name);
  auto pts = std::make_shared<const std::vector<PointValue>>(std::move(points));
  auto mat =
      std::make_shared<const std::vector<std::vector<Rational>>>(
          std::move(matrix));
  auto index_of = [pts](const PointValue& x) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < pts->size(); ++i)
      if ((*pts)[i] == x) return i;
    return std::nullopt;
  };
  impl->in_sort = [index_of](const PointValue& x) {
    return index_of(x).has_value();
  };
  impl->delta = [index_of, mat](const PointValue& x,
                                const PointValue& y) -> Rational {
    return (*mat)[*index_of(x)][*index_of(y)];
  };
  impl->sample = *pts;
  auto dev = [index_of, mat](std::size_t center, std::size_t i) -> Rational {
    const Rational d = (*mat)[i][center] - (*mat)[center][center];
    return d < 0 ? Rational(-d) : d;
  };
  impl->ball_pick = [pts, index_of, dev](
                        const PointValue& c,
                        const Rational& r) -> std::optional<PointValue> {
    const auto ci = index_of(c);
    if (!ci) return std::nullopt;
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < pts->size(); ++i) {
      if (i == *ci) continue;
      const Rational d = dev(*ci, i);
      if (d < r && (!best || d < dev(*ci, *best))) best = i;
    }
    if (!best) return std::nullopt;
    return (*pts)[*best];
  };
  impl->eventual_pick = [pts, index_of, dev](
                            const PointValue& c) -> std::optional<PointValue> {
    const auto ci = index_of(c);
    if (!ci) return std::nullopt;
    for (std::size_t i = 0; i < pts->size(); ++i)
      if (i != *ci && dev(*ci, i) == 0) return (*pts)[i];
    return std::nullopt;
  };
  auto weak = std::weak_ptr<const Impl>(impl);
  impl->approach_valid = [weak](const PointValue& c) {
    auto sp = weak.lock();
    return sp && sp->eventual_pick(c).has_value();
  };
  impl->ramp_ok = false;
  impl->tail_deviation =
      [weak](const TailRule& tail,
             const PointValue& target) -> std::optional<TailDeviationCert> {
    auto sp = weak.lock();
    if (!sp || tail.kind != TailRule::Kind::HarmonicApproach)
      return std::nullopt;
    auto pick = sp->eventual_pick(tail.point);
    if (!pick) return std::nullopt;
    const Rational c = deviation_from(*sp, target, *pick);
    return TailDeviationCert{TailDeviationCert::Kind::EventuallyConstant, c,
                             c > 0};
  };
  impl->topology = [pts, index_of,
                    dev](const PointValue& x) -> std::optional<TopologyCert> {
    const auto xi = index_of(x);
    if (!xi) return std::nullopt;
    std::optional<Rational> min_positive;
    for (std::size_t i = 0; i < pts->size(); ++i) {
      if (i == *xi) continue;
      const Rational d = dev(*xi, i);
      if (d == 0) return TopologyCert{false, 0};
      if (!min_positive || d < *min_positive) min_positive = d;
    }
    return TopologyCert{true, min_positive ? *min_positive : Rational(1)};
  };
  return Space(std::move(impl));
}

// ---------------------------------------------------------------------------
// axiom sweeps

namespace {

// column-major pair order: all pairs within sample[0..k] are visited before
// sample[k+1] is touched at all
template <typename F>
Verdict sweep_pairs(const std::vector<PointValue>& sample, F&& check) {
  for (std::size_t k = 1; k < sample.size(); ++k)
    for (std::size_t i = 0; i < k; ++i)
      if (auto v = check(sample[i], sample[k])) return *v;
  return Verdict::holds(SweepCount{}, "");
}

std::string pair_text(const PointValue& x, const PointValue& y) {
  return "(" + x.to_string() + ", " + y.to_string() + ")";
}

} // namespace

Verdict check_metric_like_axioms(const Space& space,
                                 const std::vector<PointValue>& sample) {
  const std::size_t n = sample.size();
  auto pair_verdict = sweep_pairs(
      sample,
      [&](const PointValue& x, const PointValue& y) -> std::optional<Verdict> {
        const Rational dxy = space.delta(x, y);
        if (dxy == 0 && !(x == y))
          return Verdict::fails(
              PointWitness{"zero-implies-equal", {x, y}, dxy, 0,
                           "delta = 0 for distinct points"},
              "distinct pair " + pair_text(x, y) + " at distance 0");
        const Rational dyx = space.delta(y, x);
        if (dxy != dyx)
          return Verdict::fails(
              PointWitness{"symmetry", {x, y}, dxy, dyx,
                           "delta(x,y) != delta(y,x)"},
              "asymmetric pair " + pair_text(x, y) + ": " + to_string(dxy) +
                  " vs " + to_string(dyx));
        return std::nullopt;
      });
  if (pair_verdict.fails_()) return pair_verdict;
  for (const PointValue& x : sample)
    for (const PointValue& y : sample)
      for (const PointValue& z : sample) {
        const Rational lhs = space.delta(x, y);
        const Rational rhs = space.delta(x, z) + space.delta(z, y);
        if (lhs > rhs)
          return Verdict::fails(
              PointWitness{"triangle", {x, y, z}, lhs, rhs,
                           "delta(x,y) > delta(x,z) + delta(z,y)"},
              "triangle fails at (" + x.to_string() + ", " + y.to_string() +
                  ", " + z.to_string() + "): " + to_string(lhs) + " > " +
                  to_string(rhs));
      }
  return Verdict::holds(
      SweepCount{n * (n - 1) / 2, n * n * n, 0},
      "metric-like axioms hold on the sample of " + std::to_string(n) +
          " points");
}

Verdict check_partial_metric_axioms(const Space& space,
                                    const std::vector<PointValue>& sample) {
  const std::size_t n = sample.size();
  // indistinguishability first: x = y iff the self-distances and the mutual
  // distance coincide (the forward direction is trivial)
  auto p1 = sweep_pairs(
      sample,
      [&](const PointValue& x, const PointValue& y) -> std::optional<Verdict> {
        const Rational xx = space.delta(x, x);
        const Rational xy = space.delta(x, y);
        const Rational yy = space.delta(y, y);
        if (xx == xy && xy == yy)
          return Verdict::fails(
              PointWitness{"indistinguishability", {x, y}, xy, xx,
                           "d(x,x) = d(x,y) = d(y,y) with x != y"},
              "distinct pair " + pair_text(x, y) +
                  " indistinguishable: all three distances equal " +
                  to_string(xy));
        return std::nullopt;
      });
  if (p1.fails_()) return p1;
  for (const PointValue& x : sample) {
    const Rational xx = space.delta(x, x);
    if (xx < 0)
      return Verdict::fails(PointWitness{"small-self-distance", {x}, xx, 0,
                                         "d(x,x) < 0"},
                            "negative self-distance at " + x.to_string());
  }
  auto p2 = sweep_pairs(
      sample,
      [&](const PointValue& x, const PointValue& y) -> std::optional<Verdict> {
        for (const auto& [a, b] : {std::pair(x, y), std::pair(y, x)}) {
          const Rational aa = space.delta(a, a);
          const Rational ab = space.delta(a, b);
          if (aa > ab)
            return Verdict::fails(
                PointWitness{"small-self-distance", {a, b}, aa, ab,
                             "d(x,x) > d(x,y)"},
                "self-distance of " + a.to_string() + " exceeds distance to " +
                    b.to_string() + ": " + to_string(aa) + " > " +
                    to_string(ab));
        }
        return std::nullopt;
      });
  if (p2.fails_()) return p2;
  auto p3 = sweep_pairs(
      sample,
      [&](const PointValue& x, const PointValue& y) -> std::optional<Verdict> {
        const Rational dxy = space.delta(x, y);
        const Rational dyx = space.delta(y, x);
        if (dxy != dyx)
          return Verdict::fails(PointWitness{"symmetry", {x, y}, dxy, dyx,
                                             "d(x,y) != d(y,x)"},
                                "asymmetric pair " + pair_text(x, y));
        return std::nullopt;
      });
  if (p3.fails_()) return p3;
  for (const PointValue& x : sample)
    for (const PointValue& y : sample)
      for (const PointValue& z : sample) {
        const Rational lhs = space.delta(x, y);
        const Rational rhs =
            space.delta(x, z) + space.delta(z, y) - space.delta(z, z);
        if (lhs > rhs)
          return Verdict::fails(
              PointWitness{"triangle", {x, y, z}, lhs, rhs,
                           "d(x,y) > d(x,z) + d(z,y) - d(z,z)"},
              "adjusted triangle fails at (" + x.to_string() + ", " +
                  y.to_string() + ", " + z.to_string() + "): " +
                  to_string(lhs) + " > " + to_string(rhs));
      }
  return Verdict::holds(
      SweepCount{n * (n - 1) / 2, n * n * n, 0},
      "partial-metric axioms hold on the sample of " + std::to_string(n) +
          " points");
}

Verdict check_metric_axioms(const Space& space,
                            const std::vector<PointValue>& sample) {
  const std::size_t n = sample.size();
  // self-distances first: the most common way a metric-like space fails to
  // be a metric, and the witness readers expect
  for (const PointValue& x : sample) {
    const Rational xx = space.delta(x, x);
    if (xx != 0)
      return Verdict::fails(
          PointWitness{"self-distance-zero", {x}, xx, 0, "d(x,x) != 0"},
          "self-distance of " + x.to_string() + " is " + to_string(xx) +
              ", not 0");
  }
  auto pairs = sweep_pairs(
      sample,
      [&](const PointValue& x, const PointValue& y) -> std::optional<Verdict> {
        const Rational dxy = space.delta(x, y);
        if (dxy == 0 && !(x == y))
          return Verdict::fails(
              PointWitness{"zero-implies-equal", {x, y}, dxy, 0,
                           "d = 0 for distinct points"},
              "distinct pair " + pair_text(x, y) + " at distance 0");
        if (dxy < 0)
          return Verdict::fails(
              PointWitness{"non-negativity", {x, y}, dxy, 0, "d(x,y) < 0"},
              "negative distance at " + pair_text(x, y));
        const Rational dyx = space.delta(y, x);
        if (dxy != dyx)
          return Verdict::fails(PointWitness{"symmetry", {x, y}, dxy, dyx,
                                             "d(x,y) != d(y,x)"},
                                "asymmetric pair " + pair_text(x, y));
        return std::nullopt;
      });
  if (pairs.fails_()) return pairs;
  for (const PointValue& x : sample)
    for (const PointValue& y : sample)
      for (const PointValue& z : sample) {
        const Rational lhs = space.delta(x, y);
        const Rational rhs = space.delta(x, z) + space.delta(z, y);
        if (lhs > rhs)
          return Verdict::fails(
              PointWitness{"triangle", {x, y, z}, lhs, rhs,
                           "d(x,y) > d(x,z) + d(z,y)"},
              "triangle fails at (" + x.to_string() + ", " + y.to_string() +
                  ", " + z.to_string() + ")");
      }
  return Verdict::holds(SweepCount{n * (n - 1) / 2, n * n * n, 0},
                        "metric axioms hold on the sample of " +
                            std::to_string(n) + " points");
}

bool in_ball(const Space& space, const BallSpec& ball, const PointValue& x) {
  const Rational d = space.delta(x, ball.center);
  const Rational self = space.delta(ball.center, ball.center);
  const Rational dev = d < self ? self - d : d - self;
  return dev < ball.radius;
}

Classification classify_point(const Space& space, const PointValue& x,
                              const std::vector<PointValue>& probe,
                              std::uint32_t j_probe) {
  Classification out;
  out.probed = probe.size();
  const auto cert = space.topology(x);
  if (cert && cert->isolated) {
    out.cls = PointClass::Isolated;
    out.radius = cert->radius;
    return out;
  }
  if (cert && !cert->isolated) {
    // exhibit a punctured-ball member per probe radius 1/j
    for (std::uint32_t j = 1; j <= j_probe; ++j) {
      const Rational r(BigInt(1), BigInt(j));
      std::optional<PointValue> w = space.ball_pick(x, r);
      if (!w) {
        for (const PointValue& y : probe) {
          if (y == x) continue;
          if (in_ball(space, BallSpec{x, r}, y)) {
            w = y;
            break;
          }
        }
      }
      if (!w) return out; // certificate not witnessable at this radius
      if (out.witnesses.empty() || !(out.witnesses.back() == *w))
        out.witnesses.push_back(*w);
    }
    out.cls = PointClass::LimitPoint;
    return out;
  }
  // no certificate: judge relative to the probe
  std::optional<Rational> min_positive;
  std::optional<PointValue> zero_neighbour;
  for (const PointValue& y : probe) {
    if (y == x) continue;
    const Rational d = space.delta(y, x);
    const Rational self = space.delta(x, x);
    const Rational dev = d < self ? self - d : d - self;
    if (dev == 0) {
      zero_neighbour = y;
      break;
    }
    if (!min_positive || dev < *min_positive) min_positive = dev;
  }
  if (zero_neighbour) {
    out.cls = PointClass::LimitPoint;
    out.witnesses.push_back(*zero_neighbour);
    return out;
  }
  if (min_positive) {
    out.cls = PointClass::Isolated;
    out.radius = *min_positive;
    return out;
  }
  return out;
}

Verdict check_t0(const Space& space, const std::vector<PointValue>& sample) {
  SeparationTable table;
  for (std::size_t k = 1; k < sample.size(); ++k)
    for (std::size_t i = 0; i < k; ++i) {
      const PointValue& x = sample[i];
      const PointValue& y = sample[k];
      bool separated = false;
      for (const PointValue& c : sample) {
        const Rational self = space.delta(c, c);
        auto dev = [&](const PointValue& p) -> Rational {
          const Rational d = space.delta(p, c);
          return d < self ? self - d : d - self;
        };
        const Rational a = dev(x), b = dev(y);
        if (a == b) continue;
        // the midpoint radius admits the nearer point and excludes the other
        const Rational r = (a + b) / 2;
        if (a < b)
          table.balls.push_back(SeparatingBall{x, y, c, r});
        else
          table.balls.push_back(SeparatingBall{y, x, c, r});
        separated = true;
        break;
      }
      if (!separated)
        return Verdict::fails(
            PointWitness{"t0-separation", {x, y}, 0, 0,
                         "no ball on the sample separates the pair"},
            "inseparable pair " + pair_text(x, y) +
                ": every sampled center sees both at equal deviation");
    }
  return Verdict::holds(table, "every sampled pair separated; " +
                                   std::to_string(table.balls.size()) +
                                   " balls recorded");
}

} // namespace ilconv::mls
