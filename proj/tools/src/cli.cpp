// SPDX-License-Identifier: Apache-2.0
#include "levymart_cli/cli.hpp"

#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "levymart/closed_forms.hpp"
#include "levymart/errors.hpp"
#include "levymart/formula_audit.hpp"
#include "levymart/json_io.hpp"
#include "levymart/martingale_engine.hpp"
#include "levymart/moment_engine.hpp"
#include "levymart/orthogonal.hpp"
#include "levymart/reversed_analyzer.hpp"
#include "levymart/simulator.hpp"

namespace levymart::cli {

namespace {

using nlohmann::json;

struct Options {
  std::string config;
  int order = 12;
  bool order_set = false;
  int degree = 2;
  int count = 6;
  int max_degree = 4;
  std::string t0 = "1";
  std::optional<int> n;
  std::optional<int> k;
  std::string c1 = "0", c2, c3, c4;
  // simulate
  std::size_t paths = 100000;
  std::uint64_t seed = 1;
  std::string times = "1,2,4";
  std::string check = "moments";
  int bins = 20;
  double z_threshold = 4.0;
  std::optional<double> s, t, u;
  unsigned threads = 0;
  bool inject_fault = false;
};

// Exit-code carrying result of one subcommand.
struct Outcome {
  json doc;
  int code = kExitOk;
};

SpecConfig load_config(const Options& o) {
  if (o.config.empty()) throw InvalidArgument("--config is required for this command");
  std::ifstream in(o.config);
  if (!in) throw InvalidArgument("cannot read config file " + o.config);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidArgument(std::string("config is not valid JSON: ") + e.what());
  }
  return spec_config_from_json(doc, o.order);
}

json rationals(const std::vector<Rational>& v) {
  json out = json::array();
  for (const Rational& r : v) out.push_back(to_json(r));
  return out;
}

json report_json(const IdentityReport& r) {
  json checks = json::array();
  for (const IdentityCheck& c : r.checks) {
    json row = {{"index", c.index}, {"pass", c.pass}};
    if (!c.label.empty()) row["label"] = c.label;
    if (!c.pass) row["residual"] = c.residual.to_string();
    checks.push_back(row);
  }
  return {{"identity", r.identity}, {"pass", r.all_pass()}, {"checks", checks}};
}

int table_order(const Options& o, const CumulantSpec& spec) { return o.order_set ? o.order : spec.order(); }

Outcome cmd_moments(const Options& o) {
  const SpecConfig cfg = load_config(o);
  const MomentTable table = moments(cfg.spec, table_order(o, cfg.spec));
  json records = json::array();
  for (int n = 0; n <= table.order(); ++n) records.push_back({{"n", n}, {"poly", to_json(table.m(n))}});
  return {{{"command", "moments"}, {"records", records}}};
}

Outcome cmd_martingale(const Options& o) {
  const SpecConfig cfg = load_config(o);
  const int N = table_order(o, cfg.spec);
  const MartingaleFamily fam(cfg.spec, N);
  json records = json::array();
  for (int n = 0; n <= N; ++n) records.push_back({{"n", n}, {"poly", to_json(fam.M(n))}});
  const IdentityReport prop = check_martingale_property(cfg.spec, N);
  return {{{"command", "martingale"}, {"records", records}, {"martingale_property", report_json(prop)}},
          prop.all_pass() ? kExitOk : kExitCheckFailed};
}

Outcome cmd_cross(const Options& o) {
  const SpecConfig cfg = load_config(o);
  const int half = cfg.spec.order() / 2;
  json records = json::array();
  const auto one = [&](int n, int k) {
    const CrossMomentPoly c = cross_moment(cfg.spec, n, k);
    records.push_back({{"n", n}, {"k", k}, {"d", rationals(c.d)}});
  };
  if (o.n && o.k) {
    one(*o.n, *o.k);
  } else {
    for (int n = 1; n <= half; ++n) {
      for (int k = 1; k <= half; ++k) one(n, k);
    }
  }
  return {{{"command", "cross"}, {"records", records}}};
}

Outcome cmd_orthogonal(const Options& o) {
  const SpecConfig cfg = load_config(o);
  const Rational t0 = Rational::parse(o.t0);
  const OrthogonalBasis basis = orthogonal_basis(cfg.spec, t0, o.max_degree);
  json q = json::array();
  for (const MultiPoly& p : basis.Q) q.push_back(to_json(p));
  json doc = {{"command", "orthogonal"},
              {"t", to_json(t0)},
              {"Q", q},
              {"norms", rationals(basis.norms)},
              {"a", rationals(basis.a)},
              {"b", rationals(basis.b)},
              {"favard_consistent", favard_consistent(basis)}};
  if (basis.degenerate_at) {
    doc["degenerate_at"] = *basis.degenerate_at;
    doc["degeneracy_reason"] = basis.degeneracy_reason;
  }
  int code = kExitOk;
  if (!basis.degenerate_at) {
    const ConnectionCoeffs cc = connection_coeffs(cfg.spec, t0, o.max_degree);
    json b = json::array(), bh = json::array();
    for (const auto& row : cc.b) b.push_back(rationals(row));
    for (const auto& row : cc.b_hat) bh.push_back(rationals(row));
    doc["connection"] = {{"b", b},
                         {"b_hat", bh},
                         {"mutual_inverse", cc.mutual_inverse},
                         {"unit_diagonal", cc.unit_diagonal},
                         {"zero_constant_column", cc.zero_constant_column},
                         {"first_column_formula", cc.first_column_formula},
                         {"second_column_formula", cc.second_column_formula},
                         {"mismatches", cc.mismatches}};
    if (!cc.all_pass()) code = kExitCheckFailed;
  }
  const int wmax = std::min(o.max_degree, cfg.spec.order() - 1);
  if (wmax >= 2) {
    const OrthogonalityWitness w = orthogonality_witness(cfg.spec, wmax);
    doc["martingales_orthogonal"] = w.orthogonal;
    if (!w.orthogonal) doc["witness"] = {{"n", w.n}, {"k", w.k}, {"value", w.value.to_string()}};
  }
  return {doc, code};
}

Outcome cmd_analyze_reversed(const Options& o) {
  const SpecConfig cfg = load_config(o);
  const ReversedVerdict v = reversed_feasibility(cfg.spec, o.degree);
  json doc = {{"command", "analyze-reversed"},
              {"k", v.k},
              {"feasible", v.feasible},
              {"nonconstant_l", v.nonconstant_l},
              {"forced_zero_cumulants", v.forced_zero_cumulants},
              {"notes", v.notes}};
  if (v.mu) doc["mu"] = v.mu->to_string();
  if (v.witness) doc["witness"] = *v.witness;
  return {doc};
}

json validation_json(const ClosedFormValidation& v) {
  json points = json::array();
  for (const ClosedFormValue& p : v.points) {
    json row = {{"x", p.x}, {"t", p.t}, {"series", p.series}, {"derived", p.derived},
                {"derived_rel_error", p.derived_rel_error}};
    if (p.printed) {
      row["printed"] = std::isfinite(*p.printed) ? json(*p.printed) : json(nullptr);
      row["printed_rel_error"] =
          p.printed_rel_error && std::isfinite(*p.printed_rel_error) ? json(*p.printed_rel_error) : json(nullptr);
    }
    points.push_back(row);
  }
  return {{"radius", std::isinf(v.radius) ? json(nullptr) : json(v.radius)},
          {"tolerance", v.tolerance},
          {"derived_ok", v.derived_ok},
          {"printed_discrepancy", v.printed_discrepancy},
          {"notes", v.notes},
          {"points", points}};
}

Outcome cmd_classify(const Options& o) {
  const SpecConfig cfg = load_config(o);
  if (cfg.spec.order() < 4) throw TruncationError("classify needs cumulants up to c_4");
  const GlowneCase g = glowne_classify(cfg.spec.c(2), cfg.spec.c(3), cfg.spec.c(4), cfg.spec.c(1));
  json doc = {{"command", "classify"},
              {"case", g.case_id},
              {"printed_case", g.printed_case_id},
              {"chi3", to_json(g.chi3)},
              {"chi4", to_json(g.chi4)},
              {"v", to_json(g.v)},
              {"valid_measure", g.valid_measure},
              {"notes", g.notes}};
  if (g.case_id == 2) doc["atom"] = g.c3.is_zero() ? json(nullptr) : to_json(g.chi3);
  if (g.case_id == 4 || g.case_id == 5) {
    doc["alpha"] = g.alpha;
    if (g.alpha_exact) doc["alpha_exact"] = to_json(*g.alpha_exact);
  }
  const ClosedFormValidation v = validate_closed_forms(g);
  doc["closed_form_validation"] = validation_json(v);
  const bool bad = v.printed_discrepancy || !v.derived_ok;
  doc["discrepancy"] = bad;
  return {doc, bad ? kExitCheckFailed : kExitOk};
}

Outcome cmd_closure(const Options& o) {
  Rational c1, c2, c3, c4;
  if (!o.config.empty()) {
    const SpecConfig cfg = load_config(o);
    if (cfg.spec.order() < 4) throw TruncationError("closure needs c_1..c_4 in the config");
    c1 = cfg.spec.c(1);
    c2 = cfg.spec.c(2);
    c3 = cfg.spec.c(3);
    c4 = cfg.spec.c(4);
  } else {
    if (o.c2.empty() || o.c3.empty() || o.c4.empty()) throw InvalidArgument("closure needs --config or --c2 --c3 --c4");
    c1 = Rational::parse(o.c1);
    c2 = Rational::parse(o.c2);
    c3 = Rational::parse(o.c3);
    c4 = Rational::parse(o.c4);
  }
  const CumulantSpec a = cumulant_closure(c2, c3, c4, o.order, c1);
  const CumulantSpec b = ode_series(c2, c3, c4, o.order, c1);
  return {{{"command", "closure"}, {"cumulants", rationals(a.values())}, {"agrees_with_ode_series", a == b}},
          a == b ? kExitOk : kExitCheckFailed};
}

Outcome cmd_tangent(const Options& o) {
  const std::vector<mpz_class> t = tangent_numbers(o.count);
  const std::vector<mpz_class> c = tangent_numbers_from_closure(o.count);
  json arr = json::array();
  for (const mpz_class& z : t) {
    if (z.fits_ulong_p()) {
      arr.push_back(static_cast<std::uint64_t>(z.get_ui()));
    } else {
      arr.push_back(z.get_str());
    }
  }
  return {arr, t == c ? kExitOk : kExitCheckFailed};
}

std::vector<double> parse_times(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InvalidArgument("cannot parse time '" + item + "'");
    }
  }
  return out;
}

json check_json(const CheckReport& r) {
  const auto num = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
  return {{"name", r.name},
          {"estimate", num(r.estimate)},
          {"prediction", num(r.prediction)},
          {"standard_error", num(r.standard_error)},
          {"z_score", num(r.z_score)},
          {"pass", r.pass},
          {"status", to_string(r.status)},
          {"sample_size", r.sample_size},
          {"bins_used", r.bins_used},
          {"heavy_tail_warning", r.heavy_tail_warning},
          {"notes", r.notes}};
}

Outcome cmd_simulate(const Options& o) {
  const SpecConfig cfg = load_config(o);
  if (!cfg.measure) throw InvalidArgument("simulate needs a measure config {\"c1\", \"sigma2\", \"atoms\"}");
  const std::vector<double> times = parse_times(o.times);
  const PathEnsemble e = simulate_paths(*cfg.measure, times, o.paths, o.seed, o.threads);
  CheckOptions opts;
  opts.bins = o.bins;
  opts.z_threshold = o.z_threshold;
  opts.inject_fault = o.inject_fault;
  const auto pick = [&](const std::optional<double>& v, std::size_t i, const char* name) {
    if (v) return *v;
    if (i >= times.size()) throw InvalidArgument(std::string("--") + name + " needed: not enough --times");
    return times[i];
  };
  std::vector<CheckReport> reports;
  const int n = o.n.value_or(2);
  if (o.check == "moments") {
    reports.push_back(empirical_moment_check(e, cfg.spec, o.n.value_or(1), pick(o.t, 0, "t"), opts));
  } else if (o.check == "martingale") {
    reports.push_back(martingale_mc_check(e, cfg.spec, n, pick(o.s, 0, "s"), pick(o.t, 1, "t"), opts));
  } else if (o.check == "reversed") {
    reports.push_back(reversed_mc_check(e, pick(o.s, 0, "s"), pick(o.t, 1, "t"), opts));
  } else if (o.check == "harness") {
    reports.push_back(harness_mc_check(e, pick(o.s, 0, "s"), pick(o.t, 1, "t"), pick(o.u, 2, "u"), opts));
  } else if (o.check == "cumulants") {
    reports = cumulant_check(e, cfg.spec, pick(o.t, 0, "t"), o.z_threshold, o.inject_fault);
  } else if (o.check == "bridge") {
    reports.push_back(poisson_bridge_reversed_check(e, pick(o.s, 0, "s"), pick(o.t, 1, "t"), opts));
    if (times.size() >= 3 || o.u) {
      reports.push_back(poisson_bridge_harness_check(e, pick(o.s, 0, "s"), pick(o.t, 1, "t"), pick(o.u, 2, "u"), opts));
    }
  } else {
    throw InvalidArgument("unknown --check " + o.check);
  }
  int code = kExitOk;
  for (const CheckReport& r : reports) {
    if (r.status == CheckStatus::Fail) code = kExitCheckFailed;
  }
  if (code == kExitOk) {
    for (const CheckReport& r : reports) {
      if (r.status == CheckStatus::Inconclusive) code = kExitInconclusive;
    }
  }
  json doc = {{"command", "simulate"}, {"check", o.check}, {"paths", o.paths}, {"seed", o.seed}, {"times", times}};
  if (reports.size() == 1) {
    doc["report"] = check_json(reports.front());
  } else {
    json arr = json::array();
    for (const CheckReport& r : reports) arr.push_back(check_json(r));
    doc["reports"] = arr;
  }
  return {doc, code};
}

Outcome cmd_check_identities(const Options& o) {
  const SpecConfig cfg = load_config(o);
  const int N = o.order_set ? std::min(o.order, cfg.spec.order()) : std::min(10, cfg.spec.order());
  std::vector<IdentityReport> reports;
  const MomentTable table = moments(cfg.spec, N);
  reports.push_back(check_convolution(table));
  reports.push_back(check_derivative_identity(table));
  reports.push_back(check_zero_mean(cfg.spec, N));
  reports.push_back(check_martingale_property(cfg.spec, N));
  for (IdentityReport& r : yablonski_check(cfg.spec, N)) reports.push_back(std::move(r));
  json arr = json::array();
  bool all = true;
  for (const IdentityReport& r : reports) {
    arr.push_back(report_json(r));
    all = all && r.all_pass();
  }
  return {{{"command", "check-identities"}, {"order", N}, {"identities", arr}, {"pass", all}},
          all ? kExitOk : kExitCheckFailed};
}

Outcome cmd_audit(const Options&) {
  const std::vector<AuditItem> items = formula_audit();
  json doc = audit_report(items);
  doc["command"] = "audit";
  bool any_published_wrong = false;
  for (const AuditItem& it : items) any_published_wrong = any_published_wrong || !it.published_agrees;
  const bool decided = doc["all_decided"].get<bool>();
  return {doc, (!decided || any_published_wrong) ? kExitCheckFailed : kExitOk};
}

json error_doc(const std::string& kind, const std::string& message) {
  return {{"error", kind}, {"message", message}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact moment, martingale and cumulant tools for Levy processes", "levymart"};
  app.require_subcommand(1, 1);

  const auto add_config = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--config", o.config, "JSON spec: {\"cumulants\": [...]} or {\"c1\", \"sigma2\", \"atoms\"}");
    if (required) opt->required();
    sub->add_option_function<int>("--order", [&](const int& v) { o.order = v; o.order_set = true; },
                                  "Cumulant/moment order (measure configs are expanded to this order; default 12)");
  };

  auto* moments_cmd = app.add_subcommand("moments", "Moment polynomials m_n(t)");
  add_config(moments_cmd, true);
  auto* mart_cmd = app.add_subcommand("martingale", "Polynomial martingales M_n(x,t)");
  add_config(mart_cmd, true);
  auto* cross_cmd = app.add_subcommand("cross", "Cross moments E[M_n M_k](t)");
  add_config(cross_cmd, true);
  cross_cmd->add_option("--n", o.n, "First index");
  cross_cmd->add_option("--k", o.k, "Second index");
  auto* orth_cmd = app.add_subcommand("orthogonal", "Orthogonal basis and connection coefficients at t0");
  add_config(orth_cmd, true);
  orth_cmd->add_option("--t", o.t0, "Time t0 as p/q");
  orth_cmd->add_option("--max-degree", o.max_degree, "Highest degree")->check(CLI::PositiveNumber);
  auto* rev_cmd = app.add_subcommand("analyze-reversed", "Can mu(t) M_k be a reversed martingale?");
  add_config(rev_cmd, true);
  rev_cmd->add_option("--degree", o.degree, "k")->check(CLI::Range(2, 64));
  auto* classify_cmd = app.add_subcommand("classify", "Five-case classification from (c2, c3, c4) with closed-form validation");
  add_config(classify_cmd, true);
  auto* closure_cmd = app.add_subcommand("closure", "Cumulants forced by the two-term reversed-martingale condition");
  add_config(closure_cmd, false);
  closure_cmd->add_option("--c1", o.c1);
  closure_cmd->add_option("--c2", o.c2);
  closure_cmd->add_option("--c3", o.c3);
  closure_cmd->add_option("--c4", o.c4);
  auto* tangent_cmd = app.add_subcommand("tangent", "Tangent numbers T_1..T_k");
  tangent_cmd->add_option("--count", o.count, "k")->check(CLI::Range(1, 500));
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo checks on simulated paths");
  add_config(sim_cmd, true);
  sim_cmd->add_option("--paths", o.paths)->check(CLI::PositiveNumber);
  sim_cmd->add_option("--seed", o.seed);
  sim_cmd->add_option("--times", o.times, "Comma-separated increasing positive times");
  sim_cmd->add_option("--check", o.check)
      ->check(CLI::IsMember({"moments", "martingale", "reversed", "harness", "cumulants", "bridge"}));
  sim_cmd->add_option("--n", o.n, "Moment or martingale index");
  sim_cmd->add_option("--bins", o.bins)->check(CLI::PositiveNumber);
  sim_cmd->add_option("--z-threshold", o.z_threshold)->check(CLI::PositiveNumber);
  sim_cmd->add_option("--s", o.s);
  sim_cmd->add_option("--t", o.t);
  sim_cmd->add_option("--u", o.u);
  sim_cmd->add_option("--threads", o.threads, "Worker threads (0 = all cores)");
  sim_cmd->add_flag("--inject-fault", o.inject_fault, "Use a deliberately wrong prediction");
  auto* ident_cmd = app.add_subcommand("check-identities", "Exact identity suite");
  add_config(ident_cmd, true);
  app.add_subcommand("audit", "Check published formulas against independent computations");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    err << app.help();
    out << json{{"usage", app.help()}}.dump(2) << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n\n" << app.help();
    out << error_doc("usage", e.what()).dump(2) << '\n';
    return kExitInvalid;
  }

  const CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  Outcome result;
  try {
    if (name == "moments") result = cmd_moments(o);
    else if (name == "martingale") result = cmd_martingale(o);
    else if (name == "cross") result = cmd_cross(o);
    else if (name == "orthogonal") result = cmd_orthogonal(o);
    else if (name == "analyze-reversed") result = cmd_analyze_reversed(o);
    else if (name == "classify") result = cmd_classify(o);
    else if (name == "closure") result = cmd_closure(o);
    else if (name == "tangent") result = cmd_tangent(o);
    else if (name == "simulate") result = cmd_simulate(o);
    else if (name == "check-identities") result = cmd_check_identities(o);
    else result = cmd_audit(o);
  } catch (const InvalidArgument& e) {
    err << "levymart " << name << ": " << e.what() << '\n';
    out << error_doc("invalid-argument", e.what()).dump(2) << '\n';
    return kExitInvalid;
  } catch (const TruncationError& e) {
    err << "levymart " << name << ": " << e.what() << '\n';
    out << error_doc("truncation", e.what()).dump(2) << '\n';
    return kExitInvalid;
  } catch (const RejectedSpec& e) {
    err << "levymart " << name << ": " << e.what() << '\n';
    out << error_doc("rejected-spec", e.what()).dump(2) << '\n';
    return kExitInvalid;
  } catch (const DegenerateSpec& e) {
    err << "levymart " << name << ": " << e.what() << '\n';
    out << error_doc("degenerate-spec", e.what()).dump(2) << '\n';
    return kExitInvalid;
  } catch (const DomainError& e) {
    err << "levymart " << name << ": " << e.what() << '\n';
    out << error_doc("domain", e.what()).dump(2) << '\n';
    return kExitInvalid;
  }
  if (result.code != kExitOk) err << "levymart " << name << ": exit " << result.code << '\n';
  out << result.doc.dump(2) << '\n';
  return result.code;
}

}  // namespace levymart::cli
