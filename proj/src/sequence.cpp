#include "ilconv/sequence.hpp"

#include "ilconv/errors.hpp"

#include <sstream>

namespace ilconv::conv {

CellSequence::CellSequence(mls::Space space,
                           std::map<std::uint32_t, mls::PointValue> overrides,
                           TailRule tail)
    : space_(std::move(space)),
      overrides_(std::move(overrides)),
      tail_(std::move(tail)) {
  for (const auto& [cell, point] : overrides_) {
    if (cell == 0) throw PreconditionError("cell indices start at 1");
    if (!space_.in_sort(point))
      throw PreconditionError("override point " + point.to_string() +
                              " is outside " + space_.name());
  }
  switch (tail_.kind) {
    case TailRule::Kind::ConstPoint:
      if (!space_.in_sort(tail_.point))
        throw PreconditionError("tail point " + tail_.point.to_string() +
                                " is outside " + space_.name());
      break;
    case TailRule::Kind::IntegerRamp:
      if (!space_.integer_ramp_valid())
        throw PreconditionError(space_.name() +
                                " does not carry all integer points");
      break;
    case TailRule::Kind::HarmonicApproach:
      if (!space_.approach_valid(tail_.point))
        throw PreconditionError(
            "no approach tail around " + tail_.point.to_string() + " in " +
            space_.name() + ": punctured balls are not served at every scale");
      break;
  }
}

mls::PointValue CellSequence::value_on_cell(std::uint32_t j) const {
  if (j == 0) throw PreconditionError("cell indices start at 1");
  if (const auto it = overrides_.find(j); it != overrides_.end())
    return it->second;
  switch (tail_.kind) {
    case TailRule::Kind::ConstPoint: return tail_.point;
    case TailRule::Kind::IntegerRamp: return mls::PointValue::integer(j);
    case TailRule::Kind::HarmonicApproach: break;
  }
  const auto pick = space_.ball_pick(tail_.point, Rational(BigInt(1), BigInt(j)));
  if (!pick)
    throw PreconditionError("ball pick around " + tail_.point.to_string() +
                            " failed at radius 1/" + std::to_string(j));
  return *pick;
}

std::uint32_t CellSequence::max_override_cell() const {
  return overrides_.empty() ? 0 : overrides_.rbegin()->first;
}

std::string CellSequence::describe() const {
  std::ostringstream os;
  os << "cellwise { ";
  for (const auto& [cell, point] : overrides_)
    os << cell << " -> " << point.to_expr() << "; ";
  os << "default " << tail_.to_expr() << " }";
  return os.str();
}

std::uint32_t cell_of_index(const BigInt& n) {
  if (n <= 0) throw std::invalid_argument("naturals start at 1");
  return static_cast<std::uint32_t>(boost::multiprecision::lsb(n)) + 1;
}

Rational cell_deviation(const CellSequence& seq, const mls::PointValue& target,
                        std::uint32_t cell) {
  const Rational d = seq.space().delta(seq.value_on_cell(cell), target) -
                     seq.space().delta(target, target);
  return d < 0 ? Rational(-d) : d;
}

Rational deviation(const CellSequence& seq, const mls::PointValue& target,
                   std::uint64_t n) {
  return cell_deviation(seq, target, natset::cell_of(n));
}

Rational deviation_big(const CellSequence& seq, const mls::PointValue& target,
                       const BigInt& n) {
  return cell_deviation(seq, target, cell_of_index(n));
}

DeviationProfile build_profile(const CellSequence& seq,
                               const mls::PointValue& target,
                               const Params& params) {
  if (!seq.space().in_sort(target))
    throw SortError("target " + target.to_string() + " is outside " +
                    seq.space().name());
  DeviationProfile out;
  out.j_eff = std::max<std::uint32_t>(
      {params.j_probe, seq.max_override_cell(), 1});
  out.dev.reserve(out.j_eff);
  for (std::uint32_t j = 1; j <= out.j_eff; ++j)
    out.dev.push_back(cell_deviation(seq, target, j));
  if (seq.tail().kind == TailRule::Kind::ConstPoint) {
    // one exact value settles every cell the overrides do not touch
    const Rational c = seq.space().delta(seq.tail().point, target) -
                       seq.space().delta(target, target);
    const Rational dev = c < 0 ? Rational(-c) : c;
    out.tail = mls::TailDeviationCert{
        mls::TailDeviationCert::Kind::EventuallyConstant, dev, dev > 0};
  } else {
    out.tail = seq.space().tail_deviation(seq.tail(), target);
  }
  return out;
}

} // namespace ilconv::conv
