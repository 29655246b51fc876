#pragma once

#include "ilconv/rational.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>

namespace ilconv::mls {

// A symbolic point of a space: a non-negative integer, a reduced non-integer
// rational, or an irrational identified only by its symbol. The three sorts
// are exactly what the built-in spaces' distance functions case on, so
// equality and classification stay decidable without real arithmetic.
class PointValue {
 public:
  enum class Kind { Integer, Rational, Irrational };

  static PointValue integer(std::uint64_t v) { return PointValue(v); }

  // Requires a positive reduced fraction with denominator > 1; integers must
  // use the Integer sort so each value has one representation.
  static PointValue rational(const ilconv::Rational& r) {
    if (r < 0) throw std::invalid_argument("points are non-negative");
    if (boost::multiprecision::denominator(r) == 1)
      throw std::invalid_argument("integral value must use the integer sort");
    return PointValue(r);
  }

  static PointValue irrational(std::string symbol) {
    if (symbol.empty()) throw std::invalid_argument("empty symbol");
    return PointValue(std::move(symbol));
  }

  Kind kind() const { return static_cast<Kind>(v_.index()); }
  bool is_integer() const { return kind() == Kind::Integer; }
  bool is_rational() const { return kind() == Kind::Rational; }
  bool is_irrational() const { return kind() == Kind::Irrational; }

  std::uint64_t int_value() const { return std::get<std::uint64_t>(v_); }
  const ilconv::Rational& rat_value() const {
    return std::get<ilconv::Rational>(v_);
  }
  const std::string& symbol() const { return std::get<std::string>(v_); }

  // Numeric value of an integer or rational point.
  ilconv::Rational numeric() const {
    if (is_integer()) return ilconv::Rational(BigInt(int_value()));
    if (is_rational()) return rat_value();
    throw std::invalid_argument("irrational point has no numeric value");
  }

  // Grammar form: "int 3", "rat 1/2", "irr sqrt2".
  std::string to_expr() const {
    switch (kind()) {
      case Kind::Integer: return "int " + std::to_string(int_value());
      case Kind::Rational: return "rat " + ilconv::to_string(rat_value());
      default: return "irr " + symbol();
    }
  }

  // Bare value, for tables and walkthroughs: "3", "1/2", "sqrt2".
  std::string to_string() const {
    switch (kind()) {
      case Kind::Integer: return std::to_string(int_value());
      case Kind::Rational: return ilconv::to_string(rat_value());
      default: return symbol();
    }
  }

  bool operator==(const PointValue& o) const = default;
  bool operator<(const PointValue& o) const { return v_ < o.v_; }

 private:
  explicit PointValue(std::uint64_t v) : v_(v) {}
  explicit PointValue(ilconv::Rational r) : v_(std::move(r)) {}
  explicit PointValue(std::string s) : v_(std::move(s)) {}

  std::variant<std::uint64_t, ilconv::Rational, std::string> v_;
};

} // namespace ilconv::mls

namespace ilconv::conv {

// Rule for the cells a cell-constant sequence does not override.
//   ConstPoint        every remaining cell carries the given point
//   IntegerRamp       cell j carries the integer point j
//   HarmonicApproach  cell j carries the space's ball pick at radius 1/j
//                     around the given center, a point of the punctured ball
struct TailRule {
  enum class Kind { ConstPoint, IntegerRamp, HarmonicApproach };

  static TailRule const_point(mls::PointValue p) {
    return {Kind::ConstPoint, std::move(p)};
  }
  static TailRule integer_ramp() {
    return {Kind::IntegerRamp, mls::PointValue::integer(0)};
  }
  static TailRule approach(mls::PointValue center) {
    return {Kind::HarmonicApproach, std::move(center)};
  }

  std::string to_expr() const {
    switch (kind) {
      case Kind::ConstPoint: return "const " + point.to_expr();
      case Kind::IntegerRamp: return "integer-ramp";
      default: return "approach " + point.to_expr();
    }
  }

  bool operator==(const TailRule& o) const = default;

  Kind kind;
  mls::PointValue point; // value, unused, or approach center respectively
};

} // namespace ilconv::conv
