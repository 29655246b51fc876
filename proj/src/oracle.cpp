#include "ilconv/oracle.hpp"

#include <stdexcept>
#include <utility>

namespace ilconv::oracle {

PrefixWitness scan_prefix(const Predicate& pred, std::uint64_t horizon,
                          std::string note) {
  if (horizon < 1) throw std::invalid_argument("prefix scans need N >= 1");
  PrefixWitness w;
  w.horizon = horizon;
  w.bits.resize(horizon);
  for (std::uint64_t n = 1; n <= horizon; ++n) w.bits[n - 1] = pred(n);
  w.note = std::move(note);
  return w;
}

std::uint32_t cell_index(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("cell index needs n >= 1");
  std::uint32_t j = 1;
  while (n % 2 == 0) {
    n /= 2;
    ++j;
  }
  return j;
}

std::vector<Rational> scan_deviations(const conv::CellSequence& seq,
                                      const mls::PointValue& x0,
                                      std::uint64_t count) {
  if (count < 1) throw std::invalid_argument("deviation scans need N >= 1");
  const Rational self = seq.space().delta(x0, x0);
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(count));
  for (std::uint64_t n = 1; n <= count; ++n) {
    const Rational d = seq.space().delta(seq.value_on_cell(cell_index(n)), x0);
    const Rational diff = d - self;
    out.push_back(diff < 0 ? Rational(-diff) : diff);
  }
  return out;
}

Verdict equiv_on_prefix(const natset::SymbolicNatSet& s, const Predicate& pred,
                        std::uint64_t horizon) {
  if (horizon < 1) throw std::invalid_argument("prefix scans need N >= 1");
  for (std::uint64_t n = 1; n <= horizon; ++n) {
    const bool sym = s.contains(n);
    const bool ref = pred(n);
    if (sym != ref)
      return Verdict::fails(
          IndexWitness{n, sym ? "in the symbolic set, rejected by the scan"
                              : "accepted by the scan, not in the symbolic "
                                "set"},
          "first disagreement at n = " + std::to_string(n));
  }
  return Verdict::holds(SweepCount{0, 0, horizon},
                        "membership agrees at every n <= " +
                            std::to_string(horizon));
}

Rational empirical_density(const Predicate& pred, std::uint64_t horizon) {
  if (horizon < 1) throw std::invalid_argument("density scans need N >= 1");
  std::uint64_t count = 0;
  for (std::uint64_t n = 1; n <= horizon; ++n)
    if (pred(n)) ++count;
  return Rational(BigInt(count), BigInt(horizon));
}

Rational empirical_density(const natset::SymbolicNatSet& s,
                           std::uint64_t horizon) {
  return empirical_density([&](std::uint64_t n) { return s.contains(n); },
                           horizon);
}

} // namespace ilconv::oracle
