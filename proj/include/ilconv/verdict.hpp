#pragma once

#include "ilconv/natset.hpp"
#include "ilconv/points.hpp"
#include "ilconv/rational.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace ilconv {

// Machine-checkable evidence attached to a verdict. Every Holds and Fails
// carries one of these; consumers can re-verify them against an oracle
// prefix scan without rerunning the decision procedure.

// A symbolic set together with the epsilon regime it answers for (the
// worst-case deviation set, a refuted candidate, ...).
struct SymbolicSetCert {
  natset::SymbolicNatSet set;
  std::optional<Rational> epsilon;
};

// A dual-filter member M; the claimed property holds along M.
struct FilterSetCert {
  natset::SymbolicNatSet set;
};

// A single cell carrying a constant deviation.
struct CellWitness {
  std::uint32_t cell = 0;
  Rational deviation;
};

// A single natural (1-based list position for decomposition checks).
struct IndexWitness {
  std::uint64_t index = 0;
  std::string note;
};

// A point tuple violating a named axiom, with both sides of the failed
// relation evaluated.
struct PointWitness {
  std::string axiom;
  std::vector<mls::PointValue> points;
  Rational lhs;
  Rational rhs;
  std::string relation; // e.g. "lhs > rhs" spelled for the report
};

// One ball separating a from b (contains a, not b).
struct SeparatingBall {
  mls::PointValue a, b, center;
  Rational radius;
};

struct SeparationTable {
  std::vector<SeparatingBall> balls;
};

// Positive evidence for exhaustive or randomized sweeps: how much was
// checked.
struct SweepCount {
  std::uint64_t pairs = 0;
  std::uint64_t triples = 0;
  std::uint64_t trials = 0;
};

using Certificate =
    std::variant<SymbolicSetCert, FilterSetCert, CellWitness, IndexWitness,
                 PointWitness, SeparationTable, SweepCount>;

enum class Outcome { Holds, Fails, Unknown };

// Three-valued result. Holds and Fails always carry a certificate; Unknown
// always carries the horizon that was exhausted, and is used only where the
// honest answer is "not decidable at this probe depth" -- procedures that
// cannot certify an exact answer at all throw instead.
class Verdict {
 public:
  static Verdict holds(Certificate cert, std::string description) {
    return Verdict(Outcome::Holds, std::move(cert), std::move(description),
                   std::nullopt);
  }
  static Verdict fails(Certificate cert, std::string description) {
    return Verdict(Outcome::Fails, std::move(cert), std::move(description),
                   std::nullopt);
  }
  static Verdict unknown(std::uint64_t horizon, std::string description) {
    return Verdict(Outcome::Unknown, std::nullopt, std::move(description),
                   horizon);
  }

  Outcome outcome() const { return outcome_; }
  bool holds_() const { return outcome_ == Outcome::Holds; }
  bool fails_() const { return outcome_ == Outcome::Fails; }
  const std::optional<Certificate>& certificate() const { return cert_; }
  const std::string& description() const { return description_; }
  std::optional<std::uint64_t> horizon() const { return horizon_; }

  template <typename T>
  const T* certificate_as() const {
    return cert_ ? std::get_if<T>(&*cert_) : nullptr;
  }

  std::string outcome_text() const {
    switch (outcome_) {
      case Outcome::Holds: return "holds";
      case Outcome::Fails: return "fails";
      default: return "unknown";
    }
  }

 private:
  Verdict(Outcome o, std::optional<Certificate> c, std::string d,
          std::optional<std::uint64_t> h)
      : outcome_(o), cert_(std::move(c)), description_(std::move(d)),
        horizon_(h) {}

  Outcome outcome_;
  std::optional<Certificate> cert_;
  std::string description_;
  std::optional<std::uint64_t> horizon_;
};

} // namespace ilconv
