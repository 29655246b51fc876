#include "ilconv/conv.hpp"

#include "ilconv/errors.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace ilconv::conv {

namespace {

using mls::PointValue;
using mls::TailDeviationCert;
using natset::CellSelection;
using natset::SymbolicNatSet;

constexpr std::uint32_t kCellCap = 1u << 16;

bool is_constant_tail(const DeviationProfile& p) {
  return p.tail &&
         p.tail->kind == TailDeviationCert::Kind::EventuallyConstant;
}

bool is_decaying_tail(const DeviationProfile& p) {
  return p.tail && p.tail->kind == TailDeviationCert::Kind::DecaysBelow;
}

std::optional<std::uint32_t> first_positive_cell(const DeviationProfile& p) {
  for (std::uint32_t j = 1; j <= p.j_eff; ++j)
    if (p.at(j) > 0) return j;
  return std::nullopt;
}

// Failure reports quote the regime eps0 = min(1, v/2) strictly below the
// witnessed deviation v, so the quoted A(eps0) visibly contains the witness.
Rational eps_below(const Rational& v) {
  Rational half = v / 2;
  if (half > 1) half = 1;
  return half;
}

std::string rat(const Rational& r) { return ilconv::to_string(r); }

// The exact A(eps) given an already-built profile. Kept separate so the
// deciders reuse one profile across several regimes.
SymbolicNatSet set_from_profile(const CellSequence& seq,
                                const PointValue& target,
                                const DeviationProfile& prof,
                                const Rational& eps) {
  if (eps <= 0) throw PreconditionError("deviation sets need eps > 0");
  if (!prof.tail) throw TailUncertifiedError(prof.j_eff);
  if (is_constant_tail(prof)) {
    const Rational& c = prof.tail->constant;
    std::vector<std::uint32_t> listed;
    if (c >= eps) {
      // every unprobed cell deviates: collect the probed quiet cells
      for (std::uint32_t j = 1; j <= prof.j_eff; ++j)
        if (prof.at(j) < eps) listed.push_back(j);
      return SymbolicNatSet::from_cells(CellSelection::all_but(listed));
    }
    for (std::uint32_t j = 1; j <= prof.j_eff; ++j)
      if (prof.at(j) >= eps) listed.push_back(j);
    return SymbolicNatSet::from_cells(CellSelection::of(listed));
  }
  // decaying tail: cells at 1/j <= eps are certified below eps, the rest up
  // to that bound are evaluated exactly
  const std::uint64_t inv = ceil_inverse(eps);
  if (inv > kCellCap)
    throw PreconditionError(
        "regime eps = " + rat(eps) + " would need " + std::to_string(inv) +
        " exact cell evaluations; refusing beyond " + std::to_string(kCellCap));
  const std::uint32_t bound =
      std::max<std::uint32_t>(prof.j_eff, static_cast<std::uint32_t>(inv));
  std::vector<std::uint32_t> listed;
  for (std::uint32_t j = 1; j <= bound; ++j) {
    const Rational d =
        j <= prof.j_eff ? prof.at(j) : cell_deviation(seq, target, j);
    if (d >= eps) listed.push_back(j);
  }
  return SymbolicNatSet::from_cells(CellSelection::of(listed));
}

} // namespace

SymbolicNatSet deviation_set(const CellSequence& seq, const PointValue& target,
                             const Rational& eps, const Params& params) {
  const DeviationProfile prof = build_profile(seq, target, params);
  return set_from_profile(seq, target, prof, eps);
}

Verdict classical_converges(const CellSequence& seq, const PointValue& target,
                            const Params& params) {
  const DeviationProfile prof = build_profile(seq, target, params);
  if (const auto p = first_positive_cell(prof)) {
    const Rational& r = prof.at(*p);
    return Verdict::fails(
        CellWitness{*p, r},
        "cell " + std::to_string(*p) + " carries constant deviation " +
            rat(r) + "; A(eps) contains that whole infinite cell for eps <= " +
            rat(r));
  }
  if (!prof.tail) throw TailUncertifiedError(prof.j_eff);
  if (is_constant_tail(prof)) {
    const Rational& c = prof.tail->constant;
    if (c == 0)
      return Verdict::holds(SymbolicSetCert{SymbolicNatSet::empty(), {}},
                            "deviation vanishes on every cell; every "
                            "deviation set is empty");
    return Verdict::fails(
        CellWitness{prof.j_eff + 1, c},
        "every cell beyond the probe deviates by " + rat(c) +
            "; cell " + std::to_string(prof.j_eff + 1) + " witnesses it");
  }
  // decaying tail: the probed cells are all quiet, so everything hinges on
  // whether the tail deviations are actually positive
  if (prof.tail->positive) {
    const Rational r = cell_deviation(seq, target, prof.j_eff + 1);
    if (r > 0)
      return Verdict::fails(
          CellWitness{prof.j_eff + 1, r},
          "the tail decays but stays positive: cell " +
              std::to_string(prof.j_eff + 1) + " deviates by " + rat(r) +
              " on an infinite index set");
  }
  return Verdict::unknown(
      prof.j_eff,
      "all probed cells vanish and the decaying tail carries no positivity "
      "certificate; undecided at cell probe " + std::to_string(prof.j_eff));
}

Verdict i_converges(const CellSequence& seq, const PointValue& target,
                    const ideals::Ideal& ideal, const Params& params) {
  const DeviationProfile prof = build_profile(seq, target, params);
  const auto first_pos = first_positive_cell(prof);

  if (!prof.tail) {
    // one positive cell is already infinite and of positive density, so fin
    // and density0 can fail honestly without the tail
    if (first_pos && ideal.kind() != ideals::IdealKind::Decomposition) {
      const Rational& r = prof.at(*first_pos);
      return Verdict::fails(
          CellWitness{*first_pos, r},
          "cell " + std::to_string(*first_pos) + " deviates by " + rat(r) +
              "; A(eps) contains that infinite cell for eps <= " + rat(r) +
              ", which " + ideal.name() + " rejects");
    }
    throw TailUncertifiedError(prof.j_eff);
  }

  if (is_constant_tail(prof)) {
    const Rational& c = prof.tail->constant;
    std::optional<Rational> vmin;
    for (std::uint32_t j = 1; j <= prof.j_eff; ++j) {
      const Rational& d = prof.at(j);
      if (d > 0 && (!vmin || d < *vmin)) vmin = d;
    }
    if (c > 0 && (!vmin || c < *vmin)) vmin = c;
    if (!vmin)
      return Verdict::holds(SymbolicSetCert{SymbolicNatSet::empty(), {}},
                            "deviation vanishes on every cell; every "
                            "deviation set is empty and lies in every ideal");
    const SymbolicNatSet worst = set_from_profile(seq, target, prof, *vmin);
    if (ideal.member(worst))
      return Verdict::holds(
          SymbolicSetCert{worst, *vmin},
          "worst regime eps = " + rat(*vmin) + " gives A(eps) = " +
              worst.to_expr() + ", a member of " + ideal.name() +
              "; every larger regime gives a subset and every smaller one "
              "the same set");
    const Rational eps0 = eps_below(*vmin);
    const SymbolicNatSet s = set_from_profile(seq, target, prof, eps0);
    return Verdict::fails(
        SymbolicSetCert{s, eps0},
        "A(" + rat(eps0) + ") = " + s.to_expr() + " is not in " +
            ideal.name());
  }

  // decaying tail
  if (ideal.kind() == ideals::IdealKind::Decomposition) {
    // each fixed regime meets only the finitely many cells before the decay
    // drops below it, and a finite union of cells is always a member
    Rational eps_star(1, prof.j_eff + 1);
    if (first_pos) {
      Rational vmin = prof.at(*first_pos);
      for (std::uint32_t j = *first_pos; j <= prof.j_eff; ++j) {
        const Rational& d = prof.at(j);
        if (d > 0 && d < vmin) vmin = d;
      }
      eps_star = vmin;
    }
    const SymbolicNatSet s = set_from_profile(seq, target, prof, eps_star);
    return Verdict::holds(
        SymbolicSetCert{s, eps_star},
        "the tail decays below 1/j, so every regime meets finitely many "
        "cells; at eps = " + rat(eps_star) + ", A(eps) = " + s.to_expr() +
            "; smaller regimes add only finitely many further cells, all "
            "members of " + ideal.name());
  }
  std::optional<std::pair<std::uint32_t, Rational>> witness;
  if (first_pos) witness = {*first_pos, prof.at(*first_pos)};
  else if (prof.tail->positive) {
    const Rational r = cell_deviation(seq, target, prof.j_eff + 1);
    if (r > 0) witness = {prof.j_eff + 1, r};
  }
  if (!witness)
    return Verdict::unknown(
        prof.j_eff,
        "all probed cells vanish and the decaying tail carries no "
        "positivity certificate; undecided at cell probe " +
            std::to_string(prof.j_eff));
  const Rational eps0 = eps_below(witness->second);
  const SymbolicNatSet s = set_from_profile(seq, target, prof, eps0);
  return Verdict::fails(
      SymbolicSetCert{s, eps0},
      "A(" + rat(eps0) + ") = " + s.to_expr() + " contains cell " +
          std::to_string(witness->first) + " entirely and is not in " +
          ideal.name());
}

Verdict statistically_converges(const CellSequence& seq,
                                const PointValue& target,
                                const Params& params) {
  const Verdict v =
      i_converges(seq, target, ideals::Ideal::density_zero(), params);
  if (v.holds_())
    return Verdict::holds(*v.certificate(),
                          "deviation vanishes on every cell; every deviation "
                          "set is empty and has density 0");
  if (v.fails_()) {
    if (const auto* cert = v.certificate_as<SymbolicSetCert>()) {
      const Rational d = cert->set.density();
      return Verdict::fails(
          *v.certificate(),
          "density(A(" + rat(cert->epsilon.value()) + ")) = density(" +
              cert->set.to_expr() + ") = " + rat(d) + ", not 0");
    }
    if (const auto* cw = v.certificate_as<CellWitness>()) {
      const Rational d = SymbolicNatSet::cell(cw->cell).density();
      return Verdict::fails(
          *v.certificate(),
          "cell " + std::to_string(cw->cell) + " deviates by " +
              rat(cw->deviation) + " and has density " + rat(d) + ", not 0");
    }
  }
  return v;
}

namespace {

// Least positive-deviation cell, looking one past the probe when the
// positives only start in the certified tail.
std::optional<std::pair<std::uint32_t, Rational>> least_positive(
    const CellSequence& seq, const PointValue& target,
    const DeviationProfile& prof) {
  if (const auto p = first_positive_cell(prof))
    return std::pair{*p, prof.at(*p)};
  const bool tail_positive =
      prof.tail && (is_decaying_tail(prof) ? prof.tail->positive
                                           : prof.tail->constant > 0);
  if (tail_positive) {
    const Rational r = cell_deviation(seq, target, prof.j_eff + 1);
    if (r > 0) return std::pair{prof.j_eff + 1, r};
  }
  return std::nullopt;
}

Verdict recurring_cell_failure(const std::pair<std::uint32_t, Rational>& w,
                               const ideals::Ideal& ideal) {
  return Verdict::fails(
      CellWitness{w.first, w.second},
      "every member of the dual filter of " + ideal.name() +
          " keeps infinitely many indices of cell " +
          std::to_string(w.first) + ", where the deviation is constantly " +
          rat(w.second) + "; no subsequence along a filter member settles");
}

} // namespace

Verdict i_star_converges(const CellSequence& seq, const PointValue& target,
                         const ideals::Ideal& ideal, const Params& params) {
  const DeviationProfile prof = build_profile(seq, target, params);
  const auto first_pos = first_positive_cell(prof);

  if (!prof.tail) {
    if (first_pos && ideal.kind() != ideals::IdealKind::Decomposition)
      return recurring_cell_failure({*first_pos, prof.at(*first_pos)}, ideal);
    throw TailUncertifiedError(prof.j_eff);
  }

  if (is_constant_tail(prof)) {
    const Rational& c = prof.tail->constant;
    // union of all positive-deviation cells; the canonical candidate is its
    // complement, and no other candidate does better
    std::vector<std::uint32_t> listed;
    CellSelection u;
    if (c > 0) {
      for (std::uint32_t j = 1; j <= prof.j_eff; ++j)
        if (prof.at(j) == 0) listed.push_back(j);
      u = CellSelection::all_but(listed);
    } else {
      for (std::uint32_t j = 1; j <= prof.j_eff; ++j)
        if (prof.at(j) > 0) listed.push_back(j);
      u = CellSelection::of(listed);
    }
    if (u.empty())
      return Verdict::holds(FilterSetCert{SymbolicNatSet::all()},
                            "M = the whole index set; deviation vanishes "
                            "along M, so the subsequence settles exactly");
    const SymbolicNatSet deviating = SymbolicNatSet::from_cells(u);
    if (ideal.member(deviating)) {
      const SymbolicNatSet m = deviating.complement();
      return Verdict::holds(
          FilterSetCert{m},
          "M = " + m.to_expr() + " lies in the dual filter of " +
              ideal.name() +
              "; deviation vanishes on every cell of M, so the subsequence "
              "along M settles exactly");
    }
    const auto w = least_positive(seq, target, prof);
    return recurring_cell_failure(*w, ideal);
  }

  // decaying tail
  if (ideal.kind() == ideals::IdealKind::Decomposition) {
    if (prof.tail->positive) {
      const auto w = least_positive(seq, target, prof);
      if (w)
        return Verdict::fails(
            CellWitness{w->first, w->second},
            "every candidate exceptional set in " + ideal.name() +
                " meets only finitely many cells, so some full cell with "
                "positive constant deviation survives in M; against the "
                "empty candidate, cell " + std::to_string(w->first) +
                " deviates by " + rat(w->second));
    }
    return Verdict::unknown(
        prof.j_eff,
        "the decaying tail carries no positivity certificate; a quiet tail "
        "would admit M, a positive one would refute it; undecided at cell "
        "probe " + std::to_string(prof.j_eff));
  }
  const auto w = least_positive(seq, target, prof);
  if (w) return recurring_cell_failure(*w, ideal);
  return Verdict::unknown(
      prof.j_eff,
      "all probed cells vanish and the decaying tail carries no positivity "
      "certificate; undecided at cell probe " + std::to_string(prof.j_eff));
}

Verdict i_star_refute(const CellSequence& seq, const PointValue& target,
                      const ideals::Ideal& ideal, const Params& params) {
  if (ideal.kind() != ideals::IdealKind::Decomposition)
    throw PreconditionError(
        "the cell refutation argument is specific to the decomposition "
        "ideal; got " + ideal.name());
  const DeviationProfile prof = build_profile(seq, target, params);
  if (!prof.tail) throw TailUncertifiedError(prof.j_eff);

  const auto w = least_positive(seq, target, prof);
  if (is_constant_tail(prof)) {
    if (prof.tail->constant > 0)
      return Verdict::fails(
          CellWitness{w->first, w->second},
          "cofinitely many cells deviate by " + rat(prof.tail->constant) +
              "; any candidate covers finitely many cells, and its least "
              "untouched deviating cell replays the argument -- against the "
              "empty candidate that is cell " + std::to_string(w->first) +
              " with deviation " + rat(w->second));
    std::vector<std::uint32_t> pos;
    for (std::uint32_t j = 1; j <= prof.j_eff; ++j)
      if (prof.at(j) > 0) pos.push_back(j);
    const SymbolicNatSet u =
        SymbolicNatSet::from_cells(CellSelection::of(pos));
    return Verdict::holds(
        SymbolicSetCert{u, {}},
        "no refutation: the positive-deviation cells form the finite "
        "selection " + u.to_expr() +
            ", itself an ideal member, so its complement is a working "
            "filter set");
  }
  if (prof.tail->positive && w)
    return Verdict::fails(
        CellWitness{w->first, w->second},
        "deviations stay positive on every cell; any candidate in the ideal "
        "leaves a full cell inside its complement -- against the empty "
        "candidate, the least deviating cell is " +
            std::to_string(w->first) + " with deviation " + rat(w->second));
  return Verdict::unknown(
      prof.j_eff,
      "the decaying tail carries no positivity certificate; undecided at "
      "cell probe " + std::to_string(prof.j_eff));
}

namespace {

// Least member of the selected cells strictly above x. The least member of
// cell j above x is the least odd multiple of 2^(j-1) past it; a cofinite
// selection only needs candidate cells up to the bit length of x plus the
// exclusion count, since some allowed cell recurs at least that often.
std::optional<BigInt> least_element_above(const CellSelection& sel,
                                          const BigInt& x) {
  std::optional<BigInt> best;
  const auto consider = [&](std::uint32_t j) {
    BigInt m = (x >> (j - 1)) + 1;
    if (m % 2 == 0) ++m;
    BigInt cand = m << (j - 1);
    if (!best || cand < *best) best = std::move(cand);
  };
  if (!sel.cofinite()) {
    for (std::uint32_t j : sel.listed()) consider(j);
    return best;
  }
  const std::uint32_t bits =
      x > 0 ? static_cast<std::uint32_t>(boost::multiprecision::msb(x)) + 1
            : 0;
  const std::uint32_t jmax =
      bits + static_cast<std::uint32_t>(sel.listed().size()) + 4;
  for (std::uint32_t j = 1; j <= jmax; ++j)
    if (sel.contains(j)) consider(j);
  return best;
}

} // namespace

std::vector<BigInt> extract_subsequence(const CellSequence& seq,
                                        const PointValue& target,
                                        std::uint32_t count,
                                        const Params& params) {
  std::vector<BigInt> out;
  out.reserve(count);
  BigInt prev = 0;
  const DeviationProfile prof = build_profile(seq, target, params);
  for (std::uint32_t k = 1; k <= count; ++k) {
    const Rational eps(BigInt(1), BigInt(k));
    const SymbolicNatSet quiet =
        set_from_profile(seq, target, prof, eps).complement();
    const auto n = least_element_above(quiet.base(), prev);
    if (!n)
      throw PreconditionError(
          "no cell qualifies at step " + std::to_string(k) +
          ": the sequence deviates by at least 1/" + std::to_string(k) +
          " on every cell, so it cannot be i-convergent to " +
          target.to_string());
    if (deviation_big(seq, target, *n) >= eps)
      throw std::logic_error("extracted index fails its own deviation bound");
    out.push_back(*n);
    prev = out.back();
  }
  return out;
}

std::optional<RefutationWitness> refutation_subsequence(
    const CellSequence& seq, const PointValue& target,
    const ideals::Ideal& ideal, const Params& params) {
  const Verdict v = i_converges(seq, target, ideal, params);
  if (v.holds_()) return std::nullopt;
  if (v.outcome() == Outcome::Unknown)
    throw PreconditionError(
        "i-convergence is undecided at this probe depth; no refutation "
        "witness can be certified");
  if (const auto* cert = v.certificate_as<SymbolicSetCert>())
    return RefutationWitness{cert->epsilon.value(), cert->set};
  // the fast cell-witness failure only occurs when the tail is uncertified,
  // and the exact index set cannot be produced then
  const DeviationProfile prof = build_profile(seq, target, params);
  throw TailUncertifiedError(prof.j_eff);
}

Promotion ap_promote(const CellSequence& seq, const PointValue& target,
                     const ideals::Ideal& ideal, const Params& params) {
  if (ideal.kind() == ideals::IdealKind::Decomposition)
    throw ApUnsupportedError(
        "no additive-property decomposition rule for the decomposition "
        "ideal");
  const Verdict iconv = i_converges(seq, target, ideal, params);
  if (!iconv.holds_())
    throw PreconditionError("sequence is not i-convergent to " +
                            target.to_string() + " under " + ideal.name() +
                            ": " + iconv.description());

  const DeviationProfile prof = build_profile(seq, target, params);
  // annulus index for a deviation v: 1 when v >= 1, else the least j with
  // 1/j <= v, putting v in [1/j, 1/(j-1))
  std::map<std::uint64_t, std::vector<std::uint32_t>> by_annulus;
  for (std::uint32_t j = 1; j <= prof.j_eff; ++j) {
    const Rational& d = prof.at(j);
    if (d > 0) by_annulus[d >= 1 ? 1 : ceil_inverse(d)].push_back(j);
  }
  // i-convergence under fin or density0 forces a quiet tail (a deviating
  // tail would put cofinitely many cells in some deviation set)
  if (!is_constant_tail(prof) || prof.tail->constant > 0)
    throw PreconditionError(
        "the certified tail still deviates despite the convergence verdict; "
        "the certificates disagree");

  std::vector<SymbolicNatSet> annuli;
  const std::uint64_t top =
      by_annulus.empty() ? 0 : by_annulus.rbegin()->first;
  for (std::uint64_t a = 1; a <= top; ++a) {
    const auto it = by_annulus.find(a);
    annuli.push_back(it == by_annulus.end()
                         ? SymbolicNatSet::empty()
                         : SymbolicNatSet::from_cells(
                               CellSelection::of(it->second)));
  }
  for (std::size_t i = 0; i < annuli.size(); ++i)
    if (!ideal.member(annuli[i]))
      throw PreconditionError("annulus " + std::to_string(i + 1) +
                              " is not a member of " + ideal.name());
  const auto dec =
      ideals::ap_decompose(ideal, ideals::APFamily{annuli});
  const SymbolicNatSet m = dec.union_of_sets.complement();

  // prefix re-verification: record, per regime, the first index past every
  // scanned violation along M
  std::vector<std::pair<Rational, std::uint64_t>> crossovers;
  for (const long long den : {1LL, 2LL, 4LL, 8LL}) {
    const Rational eps(BigInt(1), BigInt(den));
    std::uint64_t cross = 1;
    for (std::uint64_t n = 1; n <= params.horizon; ++n)
      if (m.contains(n) && deviation(seq, target, n) >= eps) cross = n + 1;
    crossovers.emplace_back(eps, cross);
  }
  std::ostringstream desc;
  desc << "decomposed " << annuli.size() << " deviation annuli; exceptional "
       << "set B = " << dec.union_of_sets.to_expr() << "; M = " << m.to_expr()
       << "; prefix scan to " << params.horizon
       << " confirms classical convergence along M (crossovers:";
  for (const auto& [eps, cross] : crossovers)
    desc << " eps=" << rat(eps) << " at " << cross << ";";
  desc << ")";
  return Promotion{Verdict::holds(FilterSetCert{m}, desc.str()), m,
                   std::move(annuli), std::move(crossovers)};
}

Verdict isolated_promote(const CellSequence& seq, const PointValue& target,
                         const ideals::Ideal& ideal, const Params& params) {
  const mls::Space& space = seq.space();
  const auto cls = mls::classify_point(space, target, space.sample(), 12);
  if (cls.cls != mls::PointClass::Isolated)
    throw PreconditionError(
        "target " + target.to_string() + " is not certified isolated in " +
        space.name() + "; the equality argument needs an isolating radius");
  const Rational& eps0 = cls.radius;

  const Verdict iconv = i_converges(seq, target, ideal, params);
  if (!iconv.holds_())
    throw PreconditionError("sequence is not i-convergent to " +
                            target.to_string() + " under " + ideal.name() +
                            ": " + iconv.description());

  const DeviationProfile prof = build_profile(seq, target, params);
  // find the cells whose value is exactly the target; beyond the evaluated
  // range the tail settles the question
  std::uint32_t j_ext = prof.j_eff;
  bool rest_equal = false;
  switch (seq.tail().kind) {
    case TailRule::Kind::ConstPoint:
      rest_equal = seq.tail().point == target;
      break;
    case TailRule::Kind::IntegerRamp:
      // the ramp value equals an integer target on exactly one cell
      if (target.is_integer() && target.int_value() > 0) {
        if (target.int_value() >= kCellCap)
          throw PreconditionError(
              "integer target is too large to locate its ramp cell exactly");
        j_ext = std::max<std::uint32_t>(
            j_ext, static_cast<std::uint32_t>(target.int_value()));
      }
      break;
    case TailRule::Kind::HarmonicApproach: {
      const Rational diff =
          space.delta(target, seq.tail().point) -
          space.delta(seq.tail().point, seq.tail().point);
      const Rational r0 = diff < 0 ? Rational(-diff) : diff;
      if (r0 > 0) {
        // picks at radius 1/j <= r0 deviate from the center by strictly
        // less than the target does, so they cannot equal the target
        const std::uint64_t inv = ceil_inverse(r0);
        if (inv > kCellCap) throw TailUncertifiedError(prof.j_eff);
        j_ext = std::max<std::uint32_t>(j_ext,
                                        static_cast<std::uint32_t>(inv));
      } else {
        const auto settled = space.eventual_pick(seq.tail().point);
        if (!settled) throw TailUncertifiedError(prof.j_eff);
        rest_equal = *settled == target;
      }
      break;
    }
  }
  std::vector<std::uint32_t> eq, neq;
  for (std::uint32_t j = 1; j <= j_ext; ++j) {
    const bool equal = seq.value_on_cell(j) == target;
    const Rational d =
        j <= prof.j_eff ? prof.at(j) : cell_deviation(seq, target, j);
    // the isolating radius makes "inside the ball" and "equal" the same
    // test; a mismatch means the space's certificate is wrong
    if (equal != (d < eps0))
      throw PreconditionError(
          "isolation certificate at radius " + rat(eps0) +
          " is inconsistent with cell " + std::to_string(j) +
          " (deviation " + rat(d) + ")");
    (equal ? eq : neq).push_back(j);
  }
  const SymbolicNatSet m = SymbolicNatSet::from_cells(
      rest_equal ? CellSelection::all_but(neq) : CellSelection::of(eq));
  if (!ideal.in_filter(m))
    throw PreconditionError(
        "the equality set " + m.to_expr() +
        " is outside the dual filter despite the convergence verdict");
  return Verdict::holds(
      FilterSetCert{m},
      "x_n = " + target.to_string() + " exactly on M = " + m.to_expr() +
          ", a member of the dual filter of " + ideal.name() +
          "; the subsequence along M is constantly the target (isolating "
          "radius " + rat(eps0) + ")");
}

CellSequence build_separating_sequence(const mls::Space& space,
                                       const PointValue& x0,
                                       const Params& params) {
  if (!space.has_ball_pick())
    throw PreconditionError(space.name() +
                            " provides no ball pick; approach points cannot "
                            "be chosen");
  const auto cls = mls::classify_point(space, x0, space.sample(), 12);
  if (cls.cls == mls::PointClass::Isolated)
    throw PreconditionError(x0.to_string() + " is isolated in " +
                            space.name() + " (radius " + rat(cls.radius) +
                            "), not a limit point");
  if (cls.cls != mls::PointClass::LimitPoint)
    throw PreconditionError(x0.to_string() +
                            " is not a certified limit point of " +
                            space.name());
  const Verdict t0 = mls::check_t0(space, space.sample());
  if (!t0.holds_())
    throw PreconditionError("separation sweep fails on the sample of " +
                            space.name() + ": " + t0.description());

  CellSequence seq(space, {}, TailRule::approach(x0));
  const Verdict iconv =
      i_converges(seq, x0, ideals::Ideal::decomposition(), params);
  const Verdict refute =
      i_star_refute(seq, x0, ideals::Ideal::decomposition(), params);
  if (!iconv.holds_() || !refute.fails_())
    throw PreconditionError(
        "approach sequence failed its verification pair: i-convergence " +
        iconv.outcome_text() + ", refutation " + refute.outcome_text());
  return seq;
}

} // namespace ilconv::conv
