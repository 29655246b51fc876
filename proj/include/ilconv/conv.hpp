#pragma once

#include "ilconv/ideals.hpp"
#include "ilconv/natset.hpp"
#include "ilconv/sequence.hpp"
#include "ilconv/verdict.hpp"

#include <optional>
#include <utility>
#include <vector>

// The four convergence deciders and the constructive procedures that link
// them. Everything rests on one structural fact: a cell-constant sequence
// realizes finitely many deviation values up to any probed bound, so the
// deviation sets
//
//   A(eps) = { n : |delta(x_n, target) - delta(target, target)| >= eps }
//
// are unions of whole cells, and as eps shrinks through the positive realized
// values, A(eps) only grows. Ideal membership is downward closed, so one
// membership test at the smallest positive realized deviation (the worst
// regime) decides every regime at once. Tails certified as eventually
// constant make that exact beyond the probe; tails certified as decaying
// below 1/j bound A(eps) to finitely many cells per regime instead. Anything
// else is refused, never guessed.
namespace ilconv::conv {

// The exact set A(eps), always a pure union of cells. Throws
// TailUncertifiedError when cells beyond the probe cannot be classified.
natset::SymbolicNatSet deviation_set(const CellSequence& seq,
                                     const mls::PointValue& target,
                                     const Rational& eps,
                                     const Params& params = {});

// Classical convergence: every A(eps) finite. Any cell with positive
// deviation recurs forever, so a single positive probed cell already
// refutes; Unknown only for a tail that decays without a positivity
// certificate.
Verdict classical_converges(const CellSequence& seq,
                            const mls::PointValue& target,
                            const Params& params = {});

// density(A(eps)) = 0 for every regime. Within this algebra a nonempty cell
// union has positive density, so the verdict matches classical convergence
// but is certified by exact densities.
Verdict statistically_converges(const CellSequence& seq,
                                const mls::PointValue& target,
                                const Params& params = {});

// A(eps) in I for every regime, decided at the worst regime. Holds carries
// the worst-case deviation set; Fails carries the offending set at
// eps0 = min(1, v/2) below the witnessed deviation v (or a plain cell
// witness when the tail is uncertified but a probed cell already refutes).
Verdict i_converges(const CellSequence& seq, const mls::PointValue& target,
                    const ideals::Ideal& ideal, const Params& params = {});

// Existence of M in the dual filter with delta(x_n, target) ->
// delta(target, target) along M. Holds certifies the canonical
// M = complement of the union of positive-deviation cells; that choice is
// complete: any witnessing M survives with positive-deviation cells removed,
// and a filter member exists iff the canonical one works. Fails carries the
// cell whose constant positive deviation recurs inside every filter member.
Verdict i_star_converges(const CellSequence& seq,
                         const mls::PointValue& target,
                         const ideals::Ideal& ideal,
                         const Params& params = {});

// The refutation half on its own, for the decomposition ideal only: Fails
// (refutation succeeds) with CellWitness(p, r_p) when every candidate
// B in I leaves some full cell of constant positive deviation inside
// M = complement(B); Holds when the positive-deviation cells form a finite
// selection (so no refutation exists); Unknown when the tail certificate
// covers neither direction.
Verdict i_star_refute(const CellSequence& seq, const mls::PointValue& target,
                      const ideals::Ideal& ideal, const Params& params = {});

// Greedy-least indices n_1 < ... < n_count with deviation(n_k) < 1/k: each
// n_k is the least member of the complement of A(1/k) above its
// predecessor. Indices are exact big integers (cell k sits near 2^k).
// Throws PreconditionError when some step has no candidate cell at all.
std::vector<BigInt> extract_subsequence(const CellSequence& seq,
                                        const mls::PointValue& target,
                                        std::uint32_t count,
                                        const Params& params = {});

// When i-convergence fails: an eps0 and the exact index set S = A(eps0)
// outside the ideal, every term of which deviates by at least eps0 -- so no
// subsequence drawn from S i-converges to the target. nullopt when
// i-convergence holds.
struct RefutationWitness {
  Rational eps0;
  natset::SymbolicNatSet set;
};
std::optional<RefutationWitness> refutation_subsequence(
    const CellSequence& seq, const mls::PointValue& target,
    const ideals::Ideal& ideal, const Params& params = {});

// Promotion of an i-convergent sequence to a filter-certified one via the
// ideal's additive decomposition: deviation annuli
//   A_1 = { n : dev >= 1 },  A_j = { n : 1/j <= dev < 1/(j-1) }
// are certified ideal members, decomposed, and M = complement(union B_j)
// returned with per-epsilon crossover indices from a prefix re-scan. For fin
// and density0 the i-convergence precondition forces every annulus empty, so
// M is all of N.
struct Promotion {
  Verdict verdict;
  natset::SymbolicNatSet m;
  std::vector<natset::SymbolicNatSet> annuli;
  // for eps in {1, 1/2, 1/4, 1/8}: least index past every scanned violation
  std::vector<std::pair<Rational, std::uint64_t>> crossovers;
};
Promotion ap_promote(const CellSequence& seq, const mls::PointValue& target,
                     const ideals::Ideal& ideal, const Params& params = {});

// Promotion at an isolated target: inside the isolating radius the only
// point is the target itself, so M = { n : x_n = target } is exactly the
// complement of a deviation set and lands in the dual filter. Holds carries
// FilterSetCert(M); the subsequence along M is constantly the target.
Verdict isolated_promote(const CellSequence& seq,
                         const mls::PointValue& target,
                         const ideals::Ideal& ideal,
                         const Params& params = {});

// The separating construction: around a certified limit point of a
// separation-checked space, the approach sequence (cell j carries a
// punctured-ball member at radius 1/j) i-converges under the decomposition
// ideal while no dual-filter subsequence converges. Returns the sequence
// after verifying both halves; throws PreconditionError when the space
// lacks a ball pick, the point is not a limit point, separation fails on
// the sample, or the verification pair does not come out as stated.
CellSequence build_separating_sequence(const mls::Space& space,
                                       const mls::PointValue& x0,
                                       const Params& params = {});

} // namespace ilconv::conv
