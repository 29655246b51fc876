#include "ilconv/space.hpp"

#include "ilconv/errors.hpp"

#include <doctest.h>

using namespace ilconv;
using namespace ilconv::mls;

namespace {

PointValue pt_int(std::uint64_t v) { return PointValue::integer(v); }
PointValue pt_rat(long long n, long long d) {
  return PointValue::rational(make_rational(n, d));
}
PointValue pt_irr(const char* s) { return PointValue::irrational(s); }

} // namespace

TEST_CASE("point values have one representation per value") {
  CHECK(pt_int(3) == pt_int(3));
  CHECK(!(pt_int(3) == pt_rat(1, 2)));
  CHECK(pt_irr("sqrt2") == pt_irr("sqrt2"));
  CHECK(!(pt_irr("sqrt2") == pt_irr("pi")));
  CHECK_THROWS_AS(PointValue::rational(make_rational(4, 2)),
                  std::invalid_argument);
  CHECK_THROWS_AS(PointValue::rational(make_rational(-1, 2)),
                  std::invalid_argument);
  CHECK_THROWS_AS(PointValue::irrational(""), std::invalid_argument);
  CHECK(pt_rat(1, 2).to_expr() == "rat 1/2");
  CHECK(pt_int(7).to_expr() == "int 7");
  CHECK(pt_irr("e").to_expr() == "irr e");
}

TEST_CASE("example1 distance follows its case table") {
  const auto sp = Space::example1();
  CHECK(sp.delta(pt_irr("sqrt2"), pt_irr("sqrt2")) == 0);
  CHECK(sp.delta(pt_irr("sqrt2"), pt_irr("sqrt3")) == 3);
  CHECK(sp.delta(pt_int(2), pt_int(7)) == 2);
  CHECK(sp.delta(pt_int(2), pt_int(2)) == 2);
  CHECK(sp.delta(pt_rat(1, 2), pt_rat(1, 2)) == 3);
  CHECK(sp.delta(pt_rat(1, 2), pt_rat(1, 3)) == 3);
  CHECK(sp.delta(pt_int(3), pt_rat(1, 2)) == 3);
  CHECK(sp.delta(pt_int(3), pt_irr("sqrt2")) == 3);
  CHECK(sp.in_sort(pt_irr("anything")));
  CHECK(sp.sample().size() == 25);
}

TEST_CASE("harmonic carrier is zero plus unit fractions") {
  const auto sp = Space::harmonic();
  CHECK(sp.in_sort(pt_int(0)));
  CHECK(sp.in_sort(pt_int(1)));
  CHECK(sp.in_sort(pt_rat(1, 2)));
  CHECK(sp.in_sort(pt_rat(1, 17)));
  CHECK(!sp.in_sort(pt_int(2)));
  CHECK(!sp.in_sort(pt_rat(2, 3)));
  CHECK(!sp.in_sort(pt_irr("sqrt2")));
  CHECK(sp.delta(pt_rat(1, 2), pt_rat(1, 3)) == make_rational(1, 6));
  CHECK(sp.delta(pt_int(0), pt_rat(1, 5)) == make_rational(1, 5));
  CHECK(sp.delta(pt_rat(1, 7), pt_rat(1, 7)) == 0);
  CHECK_THROWS_AS(sp.delta(pt_int(2), pt_int(0)), SortError);
}

TEST_CASE("harmonic ball picks move along the unit fractions") {
  const auto sp = Space::harmonic();
  CHECK(sp.has_ball_pick());
  CHECK(sp.ball_pick(pt_int(0), make_rational(1, 1)) == pt_rat(1, 2));
  CHECK(sp.ball_pick(pt_int(0), make_rational(1, 3)) == pt_rat(1, 4));
  CHECK(sp.ball_pick(pt_int(0), make_rational(2, 5)) == pt_rat(1, 3));
  // around 1/4 the nearest neighbour is 1/5, at distance 1/20
  CHECK(sp.ball_pick(pt_rat(1, 4), make_rational(1, 10)) == pt_rat(1, 5));
  CHECK(!sp.ball_pick(pt_rat(1, 4), make_rational(1, 20)).has_value());
  CHECK(sp.ball_pick(pt_rat(1, 4), make_rational(1, 19)) == pt_rat(1, 5));
  CHECK(!sp.ball_pick(pt_int(0), make_rational(0, 1)).has_value());
  CHECK(sp.approach_valid(pt_int(0)));
  CHECK(!sp.approach_valid(pt_rat(1, 2)));
  CHECK(!sp.integer_ramp_valid());
}

TEST_CASE("example1 picks exist around integers and rationals") {
  const auto sp = Space::example1();
  CHECK(sp.ball_pick(pt_int(1), make_rational(1, 2)) == pt_int(2));
  CHECK(sp.ball_pick(pt_rat(1, 2), make_rational(1, 9)) == pt_int(0));
  CHECK(!sp.ball_pick(pt_irr("sqrt2"), make_rational(1, 2)).has_value());
  CHECK(sp.ball_pick(pt_irr("sqrt2"), make_rational(4, 1)) == pt_int(0));
  CHECK(sp.approach_valid(pt_int(1)));
  CHECK(sp.approach_valid(pt_rat(1, 2)));
  CHECK(!sp.approach_valid(pt_irr("sqrt2")));
  CHECK(sp.integer_ramp_valid());
}

TEST_CASE("ball membership is the strict deviation test") {
  const auto sp = Space::example1();
  CHECK(in_ball(sp, BallSpec{pt_int(1), make_rational(1, 2)}, pt_int(2)));
  CHECK(!in_ball(sp, BallSpec{pt_int(1), make_rational(1, 1)}, pt_rat(1, 2)));
  const auto h = Space::harmonic();
  CHECK(in_ball(h, BallSpec{pt_int(0), make_rational(1, 2)}, pt_rat(1, 3)));
  CHECK(!in_ball(h, BallSpec{pt_int(0), make_rational(1, 3)}, pt_rat(1, 3)));
}

TEST_CASE("tail deviation certificates for the built-ins") {
  const auto sp = Space::example1();
  const auto ramp = sp.tail_deviation(conv::TailRule::integer_ramp(), pt_int(1));
  REQUIRE(ramp.has_value());
  CHECK(ramp->kind == TailDeviationCert::Kind::EventuallyConstant);
  CHECK(ramp->constant == 0);
  const auto ramp_irr =
      sp.tail_deviation(conv::TailRule::integer_ramp(), pt_irr("sqrt2"));
  REQUIRE(ramp_irr.has_value());
  CHECK(ramp_irr->constant == 3);
  const auto appr =
      sp.tail_deviation(conv::TailRule::approach(pt_int(5)), pt_int(1));
  REQUIRE(appr.has_value());
  CHECK(appr->constant == 0);

  const auto h = Space::harmonic();
  const auto decay =
      h.tail_deviation(conv::TailRule::approach(pt_int(0)), pt_int(0));
  REQUIRE(decay.has_value());
  CHECK(decay->kind == TailDeviationCert::Kind::DecaysBelow);
  CHECK(decay->positive);
  CHECK(!h.tail_deviation(conv::TailRule::approach(pt_int(0)), pt_rat(1, 3))
             .has_value());
  CHECK(!h.tail_deviation(conv::TailRule::integer_ramp(), pt_int(0))
             .has_value());
}

TEST_CASE("example1 axiom sweeps split the three notions apart") {
  const auto sp = Space::example1();
  const auto& sample = sp.sample();

  const auto ml = check_metric_like_axioms(sp, sample);
  CHECK(ml.holds_());
  const auto* sweep = ml.certificate_as<SweepCount>();
  REQUIRE(sweep != nullptr);
  CHECK(sweep->pairs == 300);
  CHECK(sweep->triples == 25 * 25 * 25);

  const auto pm = check_partial_metric_axioms(sp, sample);
  CHECK(pm.fails_());
  const auto* pw = pm.certificate_as<PointWitness>();
  REQUIRE(pw != nullptr);
  CHECK(pw->axiom == "indistinguishability");
  REQUIRE(pw->points.size() == 2);
  CHECK(pw->points[0] == pt_rat(1, 2));
  CHECK(pw->points[1] == pt_rat(1, 3));
  CHECK(pw->lhs == 3);

  const auto m = check_metric_axioms(sp, sample);
  CHECK(m.fails_());
  const auto* mw = m.certificate_as<PointWitness>();
  REQUIRE(mw != nullptr);
  CHECK(mw->axiom == "self-distance-zero");
  REQUIRE(mw->points.size() == 1);
  CHECK(mw->points[0] == pt_int(1));
  CHECK(mw->lhs == 2);
}

TEST_CASE("harmonic passes all three axiom levels") {
  const auto sp = Space::harmonic();
  CHECK(check_metric_axioms(sp, sp.sample()).holds_());
  CHECK(check_partial_metric_axioms(sp, sp.sample()).holds_());
  CHECK(check_metric_like_axioms(sp, sp.sample()).holds_());
}

TEST_CASE("table spaces validate their shape") {
  const auto a = pt_irr("a");
  const auto b = pt_irr("b");
  CHECK_THROWS_AS(Space::from_table("bad", {a, b}, {{Rational(0)}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(Space::from_table("bad", {a, b},
                                    {{Rational(0), Rational(1)},
                                     {Rational(2), Rational(0)}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(Space::from_table("bad", {a, a},
                                    {{Rational(0), Rational(1)},
                                     {Rational(1), Rational(0)}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(Space::from_table("bad", {}, {}), std::invalid_argument);
}

TEST_CASE("table with a large self-distance is partial but not metric") {
  const auto a = pt_irr("a");
  const auto b = pt_irr("b");
  const auto sp = Space::from_table(
      "selfheavy", {a, b},
      {{make_rational(2), make_rational(1)},
       {make_rational(1), make_rational(0)}});
  // self-distance exceeds a mutual distance: not even a partial metric
  const auto pm = check_partial_metric_axioms(sp, sp.sample());
  CHECK(pm.fails_());
  const auto* pw = pm.certificate_as<PointWitness>();
  REQUIRE(pw != nullptr);
  CHECK(pw->axiom == "small-self-distance");
  CHECK(pw->lhs == 2);
  CHECK(pw->rhs == 1);
  CHECK(check_metric_axioms(sp, sp.sample()).fails_());
  CHECK(check_metric_like_axioms(sp, sp.sample()).holds_());
}

TEST_CASE("table triangle violations surface with the triple") {
  const auto a = pt_irr("a");
  const auto b = pt_irr("b");
  const auto c = pt_irr("c");
  const auto z = make_rational(0);
  const auto one = make_rational(1);
  const auto sp = Space::from_table("stretched", {a, b, c},
                                    {{z, make_rational(5), one},
                                     {make_rational(5), z, one},
                                     {one, one, z}});
  const auto ml = check_metric_like_axioms(sp, sp.sample());
  CHECK(ml.fails_());
  const auto* w = ml.certificate_as<PointWitness>();
  REQUIRE(w != nullptr);
  CHECK(w->axiom == "triangle");
  REQUIRE(w->points.size() == 3);
  CHECK(w->points[0] == a);
  CHECK(w->points[1] == b);
  CHECK(w->points[2] == c);
  CHECK(w->lhs == 5);
  CHECK(w->rhs == 2);
}

TEST_CASE("classification certifies isolated and limit points") {
  const auto sp = Space::example1();
  const auto iso = classify_point(sp, pt_irr("sqrt2"), sp.sample(), 8);
  CHECK(iso.cls == PointClass::Isolated);
  CHECK(iso.radius == 1);

  const auto lim = classify_point(sp, pt_int(1), sp.sample(), 8);
  CHECK(lim.cls == PointClass::LimitPoint);
  REQUIRE(!lim.witnesses.empty());
  CHECK(lim.witnesses.front() == pt_int(2));

  const auto h = Space::harmonic();
  const auto zero = classify_point(h, pt_int(0), h.sample(), 8);
  CHECK(zero.cls == PointClass::LimitPoint);
  REQUIRE(zero.witnesses.size() == 8);
  CHECK(zero.witnesses[0] == pt_rat(1, 2));
  CHECK(zero.witnesses[7] == pt_rat(1, 9));

  const auto unit = classify_point(h, pt_rat(1, 5), h.sample(), 8);
  CHECK(unit.cls == PointClass::Isolated);
  CHECK(unit.radius == make_rational(1, 30));
}

TEST_CASE("probe-relative classification covers tables") {
  const auto a = pt_irr("a");
  const auto b = pt_irr("b");
  const auto sp = Space::from_table(
      "twin", {a, b},
      {{make_rational(1), make_rational(1)},
       {make_rational(1), make_rational(1)}});
  // b sits at deviation zero from a: a is a limit point of the table
  const auto cls = classify_point(sp, a, sp.sample(), 6);
  CHECK(cls.cls == PointClass::LimitPoint);
}

TEST_CASE("separation sweep tells apart metric and gluey spaces") {
  const auto h = Space::harmonic();
  const auto sep = check_t0(h, {pt_int(0), pt_int(1), pt_rat(1, 2), pt_rat(1, 3)});
  CHECK(sep.holds_());
  const auto* table = sep.certificate_as<SeparationTable>();
  REQUIRE(table != nullptr);
  CHECK(table->balls.size() == 6);

  const auto sp = Space::example1();
  const auto glue = check_t0(sp, {pt_int(1), pt_int(2)});
  CHECK(glue.fails_());
  const auto* pw = glue.certificate_as<PointWitness>();
  REQUIRE(pw != nullptr);
  REQUIRE(pw->points.size() == 2);
  CHECK(pw->points[0] == pt_int(1));
  CHECK(pw->points[1] == pt_int(2));
}

TEST_CASE("topology certificates match the built-in geometry") {
  const auto sp = Space::example1();
  const auto irr = sp.topology(pt_irr("pi"));
  REQUIRE(irr.has_value());
  CHECK(irr->isolated);
  CHECK(irr->radius == 1);
  const auto num = sp.topology(pt_int(4));
  REQUIRE(num.has_value());
  CHECK(!num->isolated);

  const auto h = Space::harmonic();
  CHECK(!h.topology(pt_int(0))->isolated);
  CHECK(h.topology(pt_int(1))->isolated);
  CHECK(h.topology(pt_int(1))->radius == make_rational(1, 2));
  CHECK(h.topology(pt_rat(1, 5))->radius == make_rational(1, 30));
}
