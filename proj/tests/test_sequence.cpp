#include "doctest.h"

#include "ilconv/errors.hpp"
#include "ilconv/sequence.hpp"

#include <stdexcept>

using namespace ilconv;
using conv::CellSequence;
using conv::Params;
using mls::PointValue;
using conv::TailRule;

namespace {

CellSequence ramp_with_gap() {
  return CellSequence(mls::Space::example1(),
                      {{2, PointValue::rational(make_rational(1, 2))}},
                      TailRule::integer_ramp());
}

CellSequence zero_approach() {
  return CellSequence(mls::Space::harmonic(), {},
                      TailRule::approach(PointValue::integer(0)));
}

} // namespace

TEST_CASE("construction validates every piece against the space") {
  const auto harmonic = mls::Space::harmonic();
  const auto example = mls::Space::example1();
  const auto zero = PointValue::integer(0);

  CHECK_THROWS_AS(CellSequence(harmonic, {{0, zero}}, TailRule::const_point(zero)),
                  PreconditionError);
  CHECK_THROWS_AS(
      CellSequence(harmonic, {{1, PointValue::integer(5)}},
                   TailRule::const_point(zero)),
      PreconditionError);
  CHECK_THROWS_AS(
      CellSequence(harmonic, {}, TailRule::const_point(PointValue::integer(7))),
      PreconditionError);
  CHECK_THROWS_AS(CellSequence(harmonic, {}, TailRule::integer_ramp()),
                  PreconditionError);
  CHECK_THROWS_AS(
      CellSequence(harmonic, {},
                   TailRule::approach(PointValue::rational(make_rational(1, 3)))),
      PreconditionError);
  CHECK_THROWS_AS(
      CellSequence(example, {},
                   TailRule::approach(PointValue::irrational("sqrt2"))),
      PreconditionError);

  CHECK_NOTHROW(CellSequence(harmonic, {}, TailRule::approach(zero)));
  CHECK_NOTHROW(CellSequence(example, {}, TailRule::integer_ramp()));
  CHECK_NOTHROW(CellSequence(
      example, {}, TailRule::const_point(PointValue::irrational("sqrt2"))));
}

TEST_CASE("values follow the override map, then the tail rule") {
  const auto seq = ramp_with_gap();
  CHECK(seq.value_on_cell(1) == PointValue::integer(1));
  CHECK(seq.value_on_cell(2) == PointValue::rational(make_rational(1, 2)));
  CHECK(seq.value_on_cell(5) == PointValue::integer(5));
  CHECK(seq.max_override_cell() == 2);

  // indices 1..8 sit in cells 1,2,1,3,1,2,1,4
  CHECK(seq.value_at(1) == PointValue::integer(1));
  CHECK(seq.value_at(2) == PointValue::rational(make_rational(1, 2)));
  CHECK(seq.value_at(4) == PointValue::integer(3));
  CHECK(seq.value_at(6) == PointValue::rational(make_rational(1, 2)));
  CHECK(seq.value_at(8) == PointValue::integer(4));

  const auto approach = zero_approach();
  CHECK(approach.max_override_cell() == 0);
  CHECK(approach.value_on_cell(1) ==
        PointValue::rational(make_rational(1, 2)));
  CHECK(approach.value_on_cell(2) ==
        PointValue::rational(make_rational(1, 3)));
  CHECK(approach.value_on_cell(9) ==
        PointValue::rational(make_rational(1, 10)));

  const CellSequence constant(mls::Space::example1(), {},
                              TailRule::const_point(PointValue::integer(3)));
  CHECK(constant.value_on_cell(1) == constant.value_on_cell(40));
  CHECK_THROWS_AS(constant.value_on_cell(0), PreconditionError);
}

TEST_CASE("describe prints the grammar form") {
  CHECK(ramp_with_gap().describe() ==
        "cellwise { 2 -> rat 1/2; default integer-ramp }");
  CHECK(zero_approach().describe() ==
        "cellwise { default approach int 0 }");
}

TEST_CASE("big indices land in the right cell") {
  CHECK(conv::cell_of_index(BigInt(1)) == 1);
  CHECK(conv::cell_of_index(BigInt(6)) == 2);
  CHECK(conv::cell_of_index(BigInt(1) << 20) == 21);
  CHECK(conv::cell_of_index(BigInt(1) << 100) == 101);
  CHECK(conv::cell_of_index((BigInt(1) << 100) + (BigInt(1) << 3)) == 4);
  CHECK(conv::cell_of_index((BigInt(1) << 64) + 1) == 1);
  CHECK_THROWS_AS(conv::cell_of_index(BigInt(0)), std::invalid_argument);
  CHECK_THROWS_AS(conv::cell_of_index(BigInt(-4)), std::invalid_argument);
}

TEST_CASE("deviations are cell-constant and exact") {
  const auto seq = ramp_with_gap();
  const auto one = PointValue::integer(1);
  const Rational expected[] = {0, 1, 0, 0, 0, 1, 0, 0};
  for (std::uint64_t n = 1; n <= 8; ++n)
    CHECK(conv::deviation(seq, one, n) == expected[n - 1]);
  CHECK(conv::cell_deviation(seq, one, 2) == 1);
  CHECK(conv::deviation_big(seq, one, BigInt(1) << 41) == 0);
  CHECK(conv::deviation_big(seq, one, (BigInt(1) << 41) + 2) == 1);

  const auto approach = zero_approach();
  const auto zero = PointValue::integer(0);
  const Rational decaying[] = {make_rational(1, 2), make_rational(1, 3),
                               make_rational(1, 2), make_rational(1, 4)};
  for (std::uint64_t n = 1; n <= 4; ++n)
    CHECK(conv::deviation(approach, zero, n) == decaying[n - 1]);
}

TEST_CASE("profiles hold exact probed deviations plus a tail certificate") {
  const auto seq = ramp_with_gap();
  const auto prof = conv::build_profile(seq, PointValue::integer(1), Params{});
  CHECK(prof.j_eff == 64);
  CHECK(prof.dev.size() == 64);
  CHECK(prof.at(1) == 0);
  CHECK(prof.at(2) == 1);
  CHECK(prof.at(64) == 0);
  REQUIRE(prof.tail.has_value());
  CHECK(prof.tail->kind == mls::TailDeviationCert::Kind::EventuallyConstant);
  CHECK(prof.tail->constant == 0);

  const auto shallow =
      conv::build_profile(seq, PointValue::integer(1), Params{4, 4096});
  CHECK(shallow.j_eff == 4);

  const CellSequence wide(mls::Space::example1(),
                          {{80, PointValue::integer(2)}},
                          TailRule::integer_ramp());
  CHECK(conv::build_profile(wide, PointValue::integer(1), Params{}).j_eff ==
        80);

  // a ramp aimed at an irrational point misses by the full distance forever
  const auto far =
      conv::build_profile(seq, PointValue::irrational("sqrt2"), Params{});
  REQUIRE(far.tail.has_value());
  CHECK(far.tail->kind == mls::TailDeviationCert::Kind::EventuallyConstant);
  CHECK(far.tail->constant == 3);

  const CellSequence constant(mls::Space::example1(), {},
                              TailRule::const_point(
                                  PointValue::rational(make_rational(1, 2))));
  const auto off =
      conv::build_profile(constant, PointValue::integer(1), Params{});
  REQUIRE(off.tail.has_value());
  CHECK(off.tail->constant == 1);

  const auto approach = zero_approach();
  const auto decay =
      conv::build_profile(approach, PointValue::integer(0), Params{});
  REQUIRE(decay.tail.has_value());
  CHECK(decay.tail->kind == mls::TailDeviationCert::Kind::DecaysBelow);
  CHECK(decay.tail->positive);

  // off-target approach: the probed cells are exact but the tail is
  // certified by nobody
  const auto blind = conv::build_profile(
      approach, PointValue::rational(make_rational(1, 2)), Params{});
  CHECK_FALSE(blind.tail.has_value());
  CHECK(blind.at(1) == 0);
  CHECK(blind.at(2) == make_rational(1, 6));

  CHECK_THROWS_AS(
      conv::build_profile(approach, PointValue::integer(7), Params{}),
      SortError);
}
