#include "ilconv/cli.hpp"

#include "ilconv/conv.hpp"
#include "ilconv/dsl.hpp"
#include "ilconv/oracle.hpp"
#include "ilconv/version.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

namespace ilconv::cli {

namespace {

using nlohmann::ordered_json;

int exit_for(const dsl::Report& report) {
  if (report.any_errors) return 4;
  if (report.any_fails) return 2;
  return 0;
}

void print_parse_errors_text(std::ostream& err, const std::string& where,
                             const std::vector<dsl::ParseError>& errors) {
  for (const auto& e : errors) {
    err << where << ":" << e.line << ":" << e.column << ": error: "
        << e.message;
    if (!e.token.empty()) err << " near '" << e.token << "'";
    err << "\n";
  }
}

ordered_json parse_errors_json(const std::string& where,
                               const std::vector<dsl::ParseError>& errors) {
  ordered_json j;
  j["tool"] = std::string(kToolName);
  j["version"] = std::string(kVersion);
  j["file"] = where;
  ordered_json arr = ordered_json::array();
  for (const auto& e : errors) {
    ordered_json one;
    one["line"] = e.line;
    one["column"] = e.column;
    one["message"] = e.message;
    one["token"] = e.token;
    arr.push_back(std::move(one));
  }
  j["errors"] = std::move(arr);
  return j;
}

void emit_report(const dsl::Report& report, bool json, std::ostream& out) {
  if (json)
    out << report.to_json().dump(2) << "\n";
  else
    out << report.to_text();
}

// ---- check ---------------------------------------------------------------

int cmd_check(const std::string& path, bool json, const conv::Params& params,
              std::ostream& out, std::ostream& err) {
  std::ifstream in(path);
  if (!in) {
    err << "cannot read " << path << "\n";
    return 5;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  const dsl::ParseResult parsed = dsl::parse(buf.str());
  if (!parsed.scenario) {
    if (json)
      out << parse_errors_json(path, parsed.errors).dump(2) << "\n";
    else
      print_parse_errors_text(err, path, parsed.errors);
    return 3;
  }
  const dsl::Report report = dsl::run(*parsed.scenario, params);
  emit_report(report, json, out);
  return exit_for(report);
}

// ---- demo ----------------------------------------------------------------

struct Demo {
  const char* name;
  const char* blurb;
  const char* source;
};

constexpr Demo kDemos[] = {
    {"example1",
     "one foreign cell in a glued-integer space: int 1 and int 2 are both "
     "i-limits",
     "ideal I = decomposition\n"
     "space X = example1\n"
     "sequence x in X = cellwise { 2 -> rat 1/2; default integer-ramp }\n"
     "\n"
     "query i-converges x to int 1 under I\n"
     "query i-converges x to int 2 under I\n"},
    {"thm5",
     "an approach sequence that i-converges while every dual-filter "
     "subsequence stays a fixed distance away",
     "ideal I = decomposition\n"
     "sequence v in harmonic = cellwise { default approach int 0 }\n"
     "\n"
     "query i-converges v to int 0 under I\n"
     "query i-star-converges v to int 0 under I\n"
     "query separate harmonic at int 0\n"},
    {"isolated",
     "promotion at an isolated target: the indices carrying the target form "
     "a dual-filter member",
     "ideal I = decomposition\n"
     "space X = example1\n"
     "sequence y in X = cellwise { 2 -> int 0; default const irr sqrt2 }\n"
     "\n"
     "query isolated-promote y to irr sqrt2 under I\n"
     "query i-star-converges y to irr sqrt2 under I\n"},
    {"ap",
     "additive decomposition promotes an i-limit to a filter-certified one; "
     "under fin every annulus must come out empty, so M is all of N",
     "ideal F = fin\n"
     "space X = example1\n"
     "sequence z in X = cellwise { 2 -> int 5; default const int 1 }\n"
     "\n"
     "query ap-promote z to int 1 under F\n"
     "query i-star-converges z to int 1 under F\n"},
};

void strip_of_deviations(std::ostream& out, const conv::CellSequence& seq,
                         const mls::PointValue& target, std::uint64_t count) {
  out << "deviation of each term from " << target.to_expr() << ", n = 1.."
      << count << ":\n  ";
  const auto devs = oracle::scan_deviations(seq, target, count);
  for (std::size_t i = 0; i < devs.size(); ++i)
    out << (i ? " " : "") << to_string(devs[i]);
  out << "\n";
}

void cell_table(std::ostream& out, const conv::CellSequence& seq,
                const mls::PointValue& target, std::uint32_t upto) {
  out << "per cell (cell j holds every n with exactly j-1 trailing zero "
         "bits):\n";
  for (std::uint32_t j = 1; j <= upto; ++j)
    out << "  cell " << j << ": value " << seq.value_on_cell(j).to_string()
        << ", deviation " << to_string(conv::cell_deviation(seq, target, j))
        << "\n";
}

void regime_table(std::ostream& out, const conv::CellSequence& seq,
                  const mls::PointValue& target, const conv::Params& params) {
  out << "deviation sets by regime:\n";
  const Rational regimes[] = {Rational(2), Rational(1), Rational(1, 2),
                              Rational(1, 4)};
  for (const auto& eps : regimes)
    out << "  A(" << to_string(eps)
        << ") = " << conv::deviation_set(seq, target, eps, params).to_expr()
        << "\n";
}

void annotate_demo(std::ostream& out, const Demo& demo,
                   const dsl::Scenario& sc, const conv::Params& params) {
  const std::string name = demo.name;
  if (name == "example1") {
    const auto& seq = sc.sequences.front().second;
    strip_of_deviations(out, seq, mls::PointValue::integer(1), 16);
    cell_table(out, seq, mls::PointValue::integer(1), 4);
    regime_table(out, seq, mls::PointValue::integer(1), params);
    out << "the same sets answer for target int 2: distinct points share "
           "every i-limit here\n";
    return;
  }
  if (name == "thm5") {
    const auto& seq = sc.sequences.front().second;
    const auto zero = mls::PointValue::integer(0);
    out << "approach points picked inside the punctured ball of radius 1/j "
           "around int 0:\n";
    for (std::uint32_t j = 1; j <= 8; ++j)
      out << "  cell " << j << ": v = " << seq.value_on_cell(j).to_string()
          << ", deviation " << to_string(conv::cell_deviation(seq, zero, j))
          << "\n";
    out << "every cell keeps a positive deviation, so no dual-filter index "
           "set can carry the limit\n";
    return;
  }
  if (name == "isolated") {
    const auto& seq = sc.sequences.front().second;
    const auto target = mls::PointValue::irrational("sqrt2");
    const auto cls = mls::classify_point(seq.space(), target,
                                         seq.space().sample(), params.j_probe);
    out << "classification of irr sqrt2: "
        << (cls.cls == mls::PointClass::Isolated ? "isolated" : "not isolated")
        << " at radius " << to_string(cls.radius) << "\n";
    strip_of_deviations(out, seq, target, 16);
    return;
  }
  const auto& seq = sc.sequences.front().second;
  cell_table(out, seq, mls::PointValue::integer(1), 4);
  regime_table(out, seq, mls::PointValue::integer(1), params);
  out << "the integers of this space sit at mutual distance 2, equal to "
         "their self-distance, so the cell-2 switch to int 5 moves no "
         "deviation at all\n";
}

int cmd_demo(const std::string& name, bool json, std::ostream& out,
             std::ostream& err) {
  const Demo* demo = nullptr;
  for (const auto& d : kDemos)
    if (name == d.name) demo = &d;
  if (!demo) {
    err << "unknown demo '" << name << "'; available:";
    for (const auto& d : kDemos) err << " " << d.name;
    err << "\n";
    return 1;
  }
  const dsl::ParseResult parsed = dsl::parse(demo->source);
  const conv::Params params{}; // fixed, so demo output is reproducible
  const dsl::Report report = dsl::run(*parsed.scenario, params);
  if (json) {
    out << report.to_json().dump(2) << "\n";
    return exit_for(report);
  }
  out << "demo: " << demo->name << "\n" << demo->blurb << "\n\n";
  out << "scenario\n--------\n" << demo->source << "\n";
  annotate_demo(out, *demo, *parsed.scenario, params);
  out << "\nreport\n------\n" << report.to_text();
  return exit_for(report);
}

// ---- density ---------------------------------------------------------

int cmd_density(const std::string& expr, std::uint64_t horizon, bool json,
                std::ostream& out, std::ostream& err) {
  const dsl::SetExprResult parsed = dsl::parse_set_expr(expr);
  if (!parsed.set) {
    std::vector<dsl::ParseError> errors = {*parsed.error};
    if (json)
      out << parse_errors_json("expr", errors).dump(2) << "\n";
    else
      print_parse_errors_text(err, "expr", errors);
    return 3;
  }
  const auto& s = *parsed.set;
  const Rational exact = s.density();
  std::uint64_t hits = 0;
  for (std::uint64_t n = 1; n <= horizon; ++n)
    if (s.contains(n)) ++hits;
  const std::string empirical =
      std::to_string(hits) + "/" + std::to_string(horizon);
  if (json) {
    ordered_json j;
    j["tool"] = std::string(kToolName);
    j["version"] = std::string(kVersion);
    j["set"] = s.to_expr();
    j["exact"] = to_string(exact);
    j["empirical"] = empirical;
    j["horizon"] = horizon;
    out << j.dump(2) << "\n";
  } else {
    out << "set: " << s.to_expr() << "\n";
    out << "exact: " << to_string(exact) << "\n";
    out << "empirical: " << empirical << "\n";
    out << "horizon: " << horizon << "\n";
  }
  return 0;
}

// ---- axioms ----------------------------------------------------------

void print_verdict_line(std::ostream& out, const std::string& label,
                        const Verdict& v) {
  out << "  " << label << ": " << v.outcome_text() << ": " << v.description()
      << "\n";
  if (v.certificate())
    out << "    certificate: " << dsl::certificate_json(*v.certificate()).dump()
        << "\n";
}

ordered_json space_checks_json(const mls::Space& space) {
  const auto& sample = space.sample();
  ordered_json j;
  j["metric-like"] =
      dsl::verdict_json(mls::check_metric_like_axioms(space, sample));
  j["partial"] =
      dsl::verdict_json(mls::check_partial_metric_axioms(space, sample));
  j["metric"] = dsl::verdict_json(mls::check_metric_axioms(space, sample));
  j["separation"] = dsl::verdict_json(mls::check_t0(space, sample));
  return j;
}

void space_checks_text(std::ostream& out, const std::string& name,
                       const mls::Space& space) {
  const auto& sample = space.sample();
  out << "space " << name << " (sample of " << sample.size() << " points)\n";
  print_verdict_line(out, "metric-like",
                     mls::check_metric_like_axioms(space, sample));
  print_verdict_line(out, "partial",
                     mls::check_partial_metric_axioms(space, sample));
  print_verdict_line(out, "metric", mls::check_metric_axioms(space, sample));
  print_verdict_line(out, "separation", mls::check_t0(space, sample));
}

int cmd_axioms(const std::string& target, std::uint32_t trials,
               std::uint64_t seed, bool json, std::ostream& out,
               std::ostream& err) {
  if (target == "example1" || target == "harmonic") {
    const mls::Space space = target == "example1" ? mls::Space::example1()
                                                  : mls::Space::harmonic();
    if (json) {
      ordered_json j;
      j["tool"] = std::string(kToolName);
      j["version"] = std::string(kVersion);
      j["space"] = target;
      j["checks"] = space_checks_json(space);
      out << j.dump(2) << "\n";
    } else {
      space_checks_text(out, target, space);
    }
    return 0;
  }
  if (target == "fin" || target == "density0" || target == "decomposition") {
    const ideals::Ideal ideal = target == "fin" ? ideals::Ideal::fin()
                                : target == "density0"
                                    ? ideals::Ideal::density_zero()
                                    : ideals::Ideal::decomposition();
    const Verdict v = ideals::check_ideal_axioms(ideal, trials, seed);
    if (json) {
      ordered_json j;
      j["tool"] = std::string(kToolName);
      j["version"] = std::string(kVersion);
      j["ideal"] = target;
      j["trials"] = trials;
      j["seed"] = seed;
      j["verdict"] = dsl::verdict_json(v);
      out << j.dump(2) << "\n";
    } else {
      out << "ideal " << target << " (" << trials << " randomized trials, seed "
          << seed << ")\n";
      print_verdict_line(out, "axioms", v);
    }
    return v.holds_() ? 0 : 2;
  }
  std::ifstream in(target);
  if (!in) {
    err << "cannot read " << target
        << " (expected a space name, an ideal name, or a scenario file)\n";
    return 5;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  const dsl::ParseResult parsed = dsl::parse(buf.str());
  if (!parsed.scenario) {
    if (json)
      out << parse_errors_json(target, parsed.errors).dump(2) << "\n";
    else
      print_parse_errors_text(err, target, parsed.errors);
    return 3;
  }
  if (parsed.scenario->spaces.empty()) {
    err << "no spaces declared in " << target << "\n";
    return 1;
  }
  if (json) {
    ordered_json j;
    j["tool"] = std::string(kToolName);
    j["version"] = std::string(kVersion);
    j["file"] = target;
    ordered_json arr = ordered_json::array();
    for (const auto& [name, space] : parsed.scenario->spaces) {
      ordered_json one;
      one["space"] = name;
      one["checks"] = space_checks_json(space);
      arr.push_back(std::move(one));
    }
    j["spaces"] = std::move(arr);
    out << j.dump(2) << "\n";
  } else {
    for (const auto& [name, space] : parsed.scenario->spaces)
      space_checks_text(out, name, space);
  }
  return 0;
}

} // namespace

int main_entry(std::vector<std::string> args, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"exact deciders for ideal convergence in metric-like spaces",
               std::string(kToolName)};
  app.set_version_flag("--version",
                       std::string(kToolName) + " " + std::string(kVersion));

  conv::Params params;
  bool json = false;
  std::string path, demo_name, expr, axiom_target;
  std::uint64_t density_horizon = 1ULL << 16;
  std::uint32_t trials = 200;
  std::uint64_t seed = 1729;

  auto* check = app.add_subcommand(
      "check", "run every query in a scenario file and report verdicts");
  check->add_option("file", path, "scenario file")->required();
  check->add_flag("--json", json, "machine report instead of text");
  check->add_option("--horizon", params.horizon,
                    "index horizon for prefix scans");
  check->add_option("--jprobe", params.j_probe,
                    "cells probed exactly before the tail certificate");

  auto* demo = app.add_subcommand(
      "demo", "run an embedded walkthrough (example1, thm5, isolated, ap)");
  demo->add_option("name", demo_name, "demo name")->required();
  demo->add_flag("--json", json, "machine report instead of text");

  auto* density = app.add_subcommand(
      "density", "exact density of a set expression plus a prefix count");
  density->add_option("expr", expr, "set expression, e.g. \"D(2)|finite{5}\"")
      ->required();
  density->add_flag("--json", json, "machine report instead of text");
  density->add_option("--horizon", density_horizon, "prefix length counted");

  auto* axioms = app.add_subcommand(
      "axioms", "audit a space (three axiom levels plus separation) or an "
                "ideal, by name or from a scenario file");
  axioms->add_option("target", axiom_target,
                     "space name, ideal name, or scenario file")
      ->required();
  axioms->add_flag("--json", json, "machine report instead of text");
  axioms->add_option("--trials", trials, "randomized trials for ideal audits");
  axioms->add_option("--seed", seed, "seed for randomized trials")
      ->envname("ILCONV_SEED");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 1;
  }

  try {
    if (check->parsed()) return cmd_check(path, json, params, out, err);
    if (demo->parsed()) return cmd_demo(demo_name, json, out, err);
    if (density->parsed())
      return cmd_density(expr, density_horizon, json, out, err);
    if (axioms->parsed())
      return cmd_axioms(axiom_target, trials, seed, json, out, err);
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 70;
  }
  out << app.help();
  return 1;
}

} // namespace ilconv::cli
