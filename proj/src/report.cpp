#include "ilconv/dsl.hpp"

#include "ilconv/conv.hpp"
#include "ilconv/errors.hpp"
#include "ilconv/version.hpp"

#include <algorithm>
#include <sstream>

namespace ilconv::dsl {

using nlohmann::ordered_json;

namespace {

std::string rat(const Rational& r) { return to_string(r); }

ordered_json point_list_json(const std::vector<mls::PointValue>& pts) {
  ordered_json arr = ordered_json::array();
  for (const auto& p : pts) arr.push_back(p.to_string());
  return arr;
}

} // namespace

ordered_json certificate_json(const Certificate& cert) {
  ordered_json j;
  if (const auto* c = std::get_if<SymbolicSetCert>(&cert)) {
    j["type"] = "symbolic-set";
    j["set"] = c->set.to_expr();
    if (c->epsilon)
      j["epsilon"] = rat(*c->epsilon);
    else
      j["epsilon"] = nullptr;
  } else if (const auto* c = std::get_if<FilterSetCert>(&cert)) {
    j["type"] = "filter-set";
    j["set"] = c->set.to_expr();
  } else if (const auto* c = std::get_if<CellWitness>(&cert)) {
    j["type"] = "cell-witness";
    j["cell"] = c->cell;
    j["deviation"] = rat(c->deviation);
  } else if (const auto* c = std::get_if<IndexWitness>(&cert)) {
    j["type"] = "index-witness";
    j["index"] = c->index;
    j["note"] = c->note;
  } else if (const auto* c = std::get_if<PointWitness>(&cert)) {
    j["type"] = "point-witness";
    j["axiom"] = c->axiom;
    j["points"] = point_list_json(c->points);
    j["lhs"] = rat(c->lhs);
    j["rhs"] = rat(c->rhs);
    j["relation"] = c->relation;
  } else if (const auto* c = std::get_if<SeparationTable>(&cert)) {
    j["type"] = "separation-table";
    j["balls"] = c->balls.size();
  } else if (const auto* c = std::get_if<SweepCount>(&cert)) {
    j["type"] = "sweep-count";
    j["pairs"] = c->pairs;
    j["triples"] = c->triples;
    j["trials"] = c->trials;
  }
  return j;
}

ordered_json verdict_json(const Verdict& v) {
  ordered_json j;
  j["outcome"] = v.outcome_text();
  j["description"] = v.description();
  j["certificate"] =
      v.certificate() ? certificate_json(*v.certificate()) : ordered_json();
  j["horizon"] = v.horizon() ? ordered_json(*v.horizon()) : ordered_json();
  return j;
}

namespace {

QueryRecord verdict_record(const Query& q, const Verdict& v) {
  QueryRecord rec;
  rec.query = render_query(q);
  rec.outcome = v.outcome_text();
  rec.description = v.description();
  rec.payload =
      v.certificate() ? certificate_json(*v.certificate()) : ordered_json();
  rec.horizon = v.horizon();
  return rec;
}

QueryRecord value_record(const Query& q, std::string description,
                         ordered_json payload) {
  QueryRecord rec;
  rec.query = render_query(q);
  rec.outcome = "value";
  rec.description = std::move(description);
  rec.payload = std::move(payload);
  return rec;
}

const char* error_slug(const Error& e) {
  if (dynamic_cast<const TailUncertifiedError*>(&e)) return "tail-uncertified";
  if (dynamic_cast<const ApUnsupportedError*>(&e)) return "ap-unsupported";
  if (dynamic_cast<const PreconditionError*>(&e)) return "precondition";
  if (dynamic_cast<const SortError*>(&e)) return "sort";
  return "internal";
}

QueryRecord run_one(const Scenario& sc, const Query& q,
                    const conv::Params& params) {
  const auto seq = [&]() -> const conv::CellSequence& {
    return *sc.find_sequence(q.sequence);
  };
  const auto ideal = [&] { return *sc.resolve_ideal(q.ideal); };
  switch (q.kind) {
    case QueryKind::Converges:
      return verdict_record(q,
                            conv::classical_converges(seq(), *q.point, params));
    case QueryKind::StatConverges:
      return verdict_record(
          q, conv::statistically_converges(seq(), *q.point, params));
    case QueryKind::IConverges:
      return verdict_record(
          q, conv::i_converges(seq(), *q.point, ideal(), params));
    case QueryKind::IStarConverges:
      return verdict_record(
          q, conv::i_star_converges(seq(), *q.point, ideal(), params));
    case QueryKind::Extract: {
      if (!q.ideal.empty()) {
        const Verdict pre = conv::i_converges(seq(), *q.point, ideal(), params);
        if (!pre.holds_())
          throw PreconditionError("sequence does not i-converge under " +
                                  q.ideal + ": " + pre.description());
      }
      const auto indices =
          conv::extract_subsequence(seq(), *q.point, q.count, params);
      ordered_json arr = ordered_json::array();
      for (const auto& n : indices) arr.push_back(n.str());
      ordered_json payload;
      payload["indices"] = std::move(arr);
      return value_record(q,
                          "indices n_1 < ... < n_" + std::to_string(q.count) +
                              " with deviation(n_k) below 1/k",
                          std::move(payload));
    }
    case QueryKind::RefuteSubsequence: {
      const auto witness =
          conv::refutation_subsequence(seq(), *q.point, ideal(), params);
      ordered_json payload;
      if (witness) {
        ordered_json w;
        w["epsilon0"] = rat(witness->eps0);
        w["set"] = witness->set.to_expr();
        payload["witness"] = std::move(w);
        return value_record(q,
                            "every index in the witness set deviates by at "
                            "least epsilon0, so no subsequence drawn from it "
                            "i-converges to the target",
                            std::move(payload));
      }
      payload["witness"] = nullptr;
      return value_record(
          q, "i-convergence holds, so no refuting index set exists",
          std::move(payload));
    }
    case QueryKind::ApPromote: {
      const conv::Promotion pr =
          conv::ap_promote(seq(), *q.point, ideal(), params);
      QueryRecord rec = verdict_record(q, pr.verdict);
      ordered_json payload;
      payload["certificate"] = std::move(rec.payload);
      payload["m"] = pr.m.to_expr();
      ordered_json annuli = ordered_json::array();
      for (const auto& a : pr.annuli) annuli.push_back(a.to_expr());
      payload["annuli"] = std::move(annuli);
      ordered_json crossings = ordered_json::array();
      for (const auto& [eps, n] : pr.crossovers) {
        ordered_json c;
        c["epsilon"] = rat(eps);
        c["index"] = n;
        crossings.push_back(std::move(c));
      }
      payload["crossovers"] = std::move(crossings);
      rec.payload = std::move(payload);
      return rec;
    }
    case QueryKind::IsolatedPromote:
      return verdict_record(
          q, conv::isolated_promote(seq(), *q.point, ideal(), params));
    case QueryKind::Separate: {
      const mls::Space space = *sc.resolve_space(q.space);
      const conv::CellSequence built =
          conv::build_separating_sequence(space, *q.point, params);
      const auto decomp = ideals::Ideal::decomposition();
      const Verdict conv_half =
          conv::i_converges(built, *q.point, decomp, params);
      const Verdict refute_half =
          conv::i_star_refute(built, *q.point, decomp, params);
      QueryRecord rec;
      rec.query = render_query(q);
      rec.outcome = "holds";
      rec.description =
          "the approach sequence i-converges under the decomposition ideal "
          "while every dual-filter subsequence stays a fixed distance away";
      ordered_json payload;
      payload["sequence"] = built.describe();
      payload["i-converges"] = verdict_json(conv_half);
      payload["i-star-refute"] = verdict_json(refute_half);
      rec.payload = std::move(payload);
      return rec;
    }
    case QueryKind::Density: {
      const auto& s = *q.set;
      const Rational exact = s.density();
      std::uint64_t hits = 0;
      for (std::uint64_t n = 1; n <= params.horizon; ++n)
        if (s.contains(n)) ++hits;
      ordered_json payload;
      payload["set"] = s.to_expr();
      payload["exact"] = rat(exact);
      // prefix count shown unreduced so the horizon stays visible
      payload["empirical"] =
          std::to_string(hits) + "/" + std::to_string(params.horizon);
      payload["horizon"] = params.horizon;
      return value_record(q, "exact density " + rat(exact),
                          std::move(payload));
    }
    case QueryKind::Member: {
      const auto id = ideal();
      const auto& s = *q.set;
      const bool member = id.member(s);
      const bool filter = id.in_filter(s);
      ordered_json payload;
      payload["ideal"] = id.name();
      payload["set"] = s.to_expr();
      payload["member"] = member;
      payload["in_filter"] = filter;
      return value_record(q,
                          s.to_expr() +
                              (member ? " is in " : " is not in ") + id.name(),
                          std::move(payload));
    }
    case QueryKind::Axioms: {
      const mls::Space space = *sc.resolve_space(q.space);
      const auto& sample = space.sample();
      if (q.level) {
        Verdict v = *q.level == AxiomLevel::MetricLike
                        ? mls::check_metric_like_axioms(space, sample)
                    : *q.level == AxiomLevel::Partial
                        ? mls::check_partial_metric_axioms(space, sample)
                        : mls::check_metric_axioms(space, sample);
        return verdict_record(q, v);
      }
      const Verdict ml = mls::check_metric_like_axioms(space, sample);
      const Verdict pm = mls::check_partial_metric_axioms(space, sample);
      const Verdict m = mls::check_metric_axioms(space, sample);
      ordered_json payload;
      payload["metric-like"] = verdict_json(ml);
      payload["partial"] = verdict_json(pm);
      payload["metric"] = verdict_json(m);
      return value_record(q,
                          "metric-like: " + ml.outcome_text() +
                              "; partial: " + pm.outcome_text() +
                              "; metric: " + m.outcome_text(),
                          std::move(payload));
    }
  }
  throw Error("unhandled query kind");
}

} // namespace

Report run(const Scenario& sc, const conv::Params& params) {
  Report report;
  report.version = std::string(kVersion);
  report.digest = digest(sc.source);
  report.params = params;
  for (const auto& q : sc.queries) {
    try {
      QueryRecord rec = run_one(sc, q, params);
      if (rec.outcome == "fails") report.any_fails = true;
      report.records.push_back(std::move(rec));
    } catch (const Error& e) {
      QueryRecord rec;
      rec.query = render_query(q);
      rec.outcome = "error";
      rec.description = e.what();
      ordered_json payload;
      payload["kind"] = error_slug(e);
      if (const auto* t = dynamic_cast<const TailUncertifiedError*>(&e))
        payload["probed_cells"] = t->probed_cells;
      rec.payload = std::move(payload);
      report.any_errors = true;
      report.records.push_back(std::move(rec));
    }
  }
  return report;
}

ordered_json Report::to_json() const {
  ordered_json j;
  j["tool"] = std::string(kToolName);
  j["version"] = version;
  j["digest"] = digest;
  ordered_json p;
  p["jprobe"] = params.j_probe;
  p["horizon"] = params.horizon;
  j["params"] = std::move(p);
  ordered_json queries = ordered_json::array();
  for (const auto& rec : records) {
    ordered_json r;
    r["query"] = rec.query;
    r["outcome"] = rec.outcome;
    r["description"] = rec.description;
    r["payload"] = rec.payload;
    r["horizon"] = rec.horizon ? ordered_json(*rec.horizon) : ordered_json();
    queries.push_back(std::move(r));
  }
  j["queries"] = std::move(queries);
  return j;
}

namespace {

// Indented key/value rendering of a payload tree. Scalar arrays collapse to
// one line; arrays of objects render one element per line as k=v pairs.
void payload_lines(std::ostream& os, const std::string& key,
                   const ordered_json& value, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (value.is_object()) {
    os << pad << key << ":\n";
    for (const auto& [k, v] : value.items()) payload_lines(os, k, v, indent + 2);
    return;
  }
  if (value.is_array()) {
    const bool scalars =
        std::all_of(value.begin(), value.end(),
                    [](const ordered_json& v) { return !v.is_structured(); });
    if (scalars) {
      os << pad << key << ":";
      if (value.empty()) os << " (none)";
      for (std::size_t i = 0; i < value.size(); ++i) {
        os << (i ? ", " : " ");
        const auto& v = value[i];
        if (v.is_string())
          os << v.get<std::string>();
        else
          os << v.dump();
      }
      os << "\n";
      return;
    }
    os << pad << key << ":\n";
    for (const auto& elem : value) {
      os << pad << "  -";
      for (const auto& [k, v] : elem.items()) {
        os << " " << k << "=";
        if (v.is_string())
          os << v.get<std::string>();
        else
          os << v.dump();
      }
      os << "\n";
    }
    return;
  }
  os << pad << key << ": ";
  if (value.is_string())
    os << value.get<std::string>();
  else if (value.is_boolean())
    os << (value.get<bool>() ? "yes" : "no");
  else if (value.is_null())
    os << "-";
  else
    os << value.dump();
  os << "\n";
}

} // namespace

std::string Report::to_text() const {
  std::ostringstream os;
  os << kToolName << " " << version << "\n";
  os << "scenario fnv1a:" << digest << "\n";
  os << "params jprobe=" << params.j_probe << " horizon=" << params.horizon
     << "\n";
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& rec = records[i];
    os << "\n[" << (i + 1) << "] " << rec.query << "\n";
    os << "    " << rec.outcome << ": " << rec.description << "\n";
    if (rec.horizon) os << "    horizon: " << *rec.horizon << "\n";
    if (rec.payload.is_object())
      for (const auto& [k, v] : rec.payload.items())
        payload_lines(os, k, v, 4);
  }
  return os.str();
}

} // namespace ilconv::dsl
