#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "rgkit/analytic.hpp"
#include "rgkit/lattice.hpp"
#include "rgkit/linforms.hpp"
#include "rgkit/multdep.hpp"
#include "rgkit/pipeline.hpp"
#include "rgkit/report.hpp"
#include "rgkit/repunit.hpp"
#include "rgkit/version.hpp"

namespace {

using rg::Int;
using rg::LogScale;
using rg::Rat;
using rg::Real;
using json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitFinding = 1;
constexpr int kExitUsage = 2;

struct GlobalOpts {
  std::string format = "json";
  unsigned precision = rg::kDefaultDigits;
  unsigned workers = 1;
  std::uint64_t budget = 100'000'000;
};

// Exact integer parse accepting plain digits, 10^k, and integral
// scientific notation (2e6).
Int parse_exact_int(const std::string& s) {
  auto caret = s.find('^');
  if (caret != std::string::npos) {
    Int base(s.substr(0, caret));
    unsigned long e = std::stoul(s.substr(caret + 1));
    return pow(base, static_cast<unsigned>(e));
  }
  auto epos = s.find_first_of("eE");
  if (epos != std::string::npos) {
    Int mant(s.substr(0, epos));
    unsigned long e = std::stoul(s.substr(epos + 1));
    return mant * pow(Int(10), static_cast<unsigned>(e));
  }
  return Int(s);
}

void emit(const GlobalOpts& g, const json& j) {
  if (g.format == "csv") {
    std::cout << rg::report::to_csv(j);
  } else if (g.format == "tty") {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << j.dump() << "\n";
  }
}

rg::report::RunContext make_ctx(const GlobalOpts& g, const std::string& sub) {
  return {sub, g.format, g.precision, g.workers, g.budget};
}

int run_solve(const GlobalOpts& g, const std::string& n_str, unsigned min_m,
              bool prime_only) {
  Int n = parse_exact_int(n_str);
  if (n > parse_exact_int("10^18")) {
    std::cerr << "solve: literal N above 10^18; pass --log-n to the bounds "
                 "subcommand instead\n";
    return kExitUsage;
  }
  auto set = rg::repunit::solutions_for(n, min_m, prime_only);
  Rat tail = rg::repunit::reciprocal_tail_sum(n, min_m, prime_only);
  emit(g, rg::report::solve_report(make_ctx(g, "solve"), set, tail));
  return kExitOk;
}

int run_coincidence(const GlobalOpts& g, const std::string& base_limit,
                    const std::string& value_cap) {
  rg::repunit::CoincidenceOptions opts;
  opts.work_budget = g.budget;
  opts.workers = g.workers;
  auto records = rg::repunit::coincidence_search(parse_exact_int(base_limit),
                                                 parse_exact_int(value_cap), opts);
  emit(g, rg::report::coincidence_report(make_ctx(g, "coincidence"), records));
  return kExitOk;
}

int run_certify(const GlobalOpts& g, bool table1, bool ptable, bool findings,
                int kmax) {
  if (!table1 && !ptable && !findings) table1 = true;
  json out;
  bool ok = true;
  if (table1 || ptable) {
    auto forms = rg::analytic::derivative_forms(std::max(kmax, 6));
    auto table = rg::analytic::extract_poly_table(forms);
    auto rows = rg::analytic::certify_constants(table);
    auto rec_findings = rg::analytic::recurrence_findings(table, kmax);
    out = rg::report::certificate_report(make_ctx(g, "certify"), rows,
                                         rec_findings);
    ok = out["ok"].get<bool>();
    if (ptable) {
      json cells = json::array();
      for (int k = 1; k <= kmax; ++k) {
        for (int r = 0; r <= std::min(k, 6); ++r) {
          bool match = table.at(k, r) == rg::analytic::closed_form_poly(k, r);
          cells.push_back(json{{"k", k},
                               {"r", r},
                               {"extracted", table.at(k, r).str()},
                               {"closed_form_match", match}});
          if (r >= 1) ok = ok && match;
        }
      }
      out["ptable"] = cells;
    }
  } else {
    out = rg::report::findings_report(make_ctx(g, "certify"));
  }
  emit(g, out);
  return ok ? kExitOk : kExitFinding;
}

// Run the committed instance fixtures: expected counts must reproduce and
// the derivative-test bound must hold wherever it applies.
int run_lattice_fixtures(const GlobalOpts& g, const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "lattice: cannot open fixtures " << path << "\n";
    return kExitUsage;
  }
  json doc = json::parse(in);
  json results = json::array();
  bool ok = true;
  for (const auto& jf : doc["instances"]) {
    rg::lattice::Instance inst;
    inst.family = jf["family"].get<std::string>();
    inst.c = jf["c"].get<double>();
    inst.theta = jf["theta"].get<double>();
    inst.log_n = Real(jf["log_n"].get<double>());
    inst.k = jf["k"].get<int>();
    inst.m = Real(jf["m"].get<double>());
    inst.delta = Real(jf["delta"].dump());
    rg::lattice::CloseSetQuery q{rg::lattice::make_point_function(inst), inst.m,
                                 inst.delta, g.budget, g.workers};
    auto close = rg::lattice::enumerate_close(q);
    bool count_ok = close.points.size() == jf["expected_count"].get<std::size_t>() &&
                    close.ambiguous.size() ==
                        jf["expected_ambiguous"].get<std::size_t>();
    bool sound = true;
    if (auto w = rg::lattice::analytic_window(inst)) {
      auto bound = rg::lattice::derivative_test_bound(*w, inst.m, inst.delta);
      if (bound.applicable)
        sound = Real(static_cast<double>(close.points.size())) <= bound.bound;
    }
    ok = ok && count_ok && sound;
    results.push_back(json{{"family", inst.family},
                           {"count", close.points.size()},
                           {"count_ok", count_ok},
                           {"sound", sound}});
  }
  emit(g, json{{"config", rg::report::context_json(make_ctx(g, "lattice"))},
               {"fixtures", results},
               {"ok", ok}});
  return ok ? kExitOk : kExitFinding;
}

int run_lattice(const GlobalOpts& g, const std::string& family, double c,
                double theta, int k, const std::string& m_str,
                const std::string& delta_str, const std::string& log_n,
                bool list_points) {
  rg::lattice::Instance inst;
  inst.family = family;
  inst.c = c;
  inst.theta = theta;
  inst.k = k;
  inst.m = Real(m_str);
  inst.delta = Real(delta_str);
  if (!log_n.empty()) inst.log_n = Real(log_n);

  rg::lattice::CloseSetQuery q{rg::lattice::make_point_function(inst), inst.m,
                               inst.delta, g.budget, g.workers};
  auto close = rg::lattice::enumerate_close(q);
  json j{{"config", rg::report::context_json(make_ctx(g, "lattice"))},
         {"family", family},
         {"m", m_str},
         {"delta", delta_str},
         {"k", k},
         {"count", close.points.size()},
         {"ambiguous", close.ambiguous.size()}};
  if (list_points) j["points"] = close.points;
  bool sound = true;
  if (auto w = rg::lattice::analytic_window(inst)) {
    auto bound = rg::lattice::derivative_test_bound(*w, inst.m, inst.delta);
    j["window"] = json{{"k", w->k},
                       {"lambda", rg::report::to_double(w->lambda)},
                       {"c", rg::report::to_double(w->c)}};
    j["bound"] = rg::report::to_double(bound.bound);
    j["alpha"] = rg::report::to_double(bound.alpha);
    j["applicable"] = bound.applicable;
    if (bound.applicable)
      sound = Real(static_cast<double>(close.points.size())) <= bound.bound;
    j["sound"] = sound;
  } else {
    j["window"] = nullptr;
  }
  emit(g, j);
  return sound ? kExitOk : kExitFinding;
}

// Committed linear-form fixtures: exact zero status must match and every
// nonzero form's measured |Lambda| must sit above exp(log_bound).
int run_linform_fixtures(const GlobalOpts& g, const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "linform: cannot open fixtures " << path << "\n";
    return kExitUsage;
  }
  json doc = json::parse(in);
  json results = json::array();
  bool ok = true;
  for (const auto& jf : doc["forms"]) {
    rg::linforms::LinearForm form;
    for (const auto& e : jf["entries"])
      form.entries.push_back({Rat(Int(e[0].get<std::string>()),
                                  Int(e[1].get<std::string>())),
                              Int(e[2].get<long long>())});
    auto mv = rg::linforms::matveev_lower_bound(form);
    bool zero_ok = mv.zero == jf["zero"].get<bool>();
    bool lambda_ok = true, consistent = true;
    if (!mv.zero) {
      Real measured = 0;
      for (const auto& e : form.entries)
        measured += Real(e.b) * log(Real(numerator(e.a)) / Real(denominator(e.a)));
      measured = abs(measured);
      if (jf.contains("lambda_abs")) {
        Real want(jf["lambda_abs"].get<double>());
        lambda_ok = abs(measured - want) <= Real("1e-12") * want;
      }
      consistent = measured >= exp(mv.log_bound);
    }
    ok = ok && zero_ok && lambda_ok && consistent;
    results.push_back(json{{"zero", mv.zero},
                           {"zero_ok", zero_ok},
                           {"lambda_ok", lambda_ok},
                           {"consistent", consistent}});
  }
  emit(g, json{{"config", rg::report::context_json(make_ctx(g, "linform"))},
               {"fixtures", results},
               {"ok", ok}});
  return ok ? kExitOk : kExitFinding;
}

int run_linform(const GlobalOpts& g, const std::string& n_str, long x1, long m1,
                long x2, long m2, int matveev_n) {
  json j{{"config", rg::report::context_json(make_ctx(g, "linform"))}};
  bool ok = true;
  if (matveev_n > 0) {
    j["matveev_constant"] = {{"n", matveev_n},
                             {"value", rg::report::to_double(
                                           rg::linforms::matveev_constant(matveev_n))}};
  }
  std::optional<rg::linforms::SolutionPair> pair;
  if (!n_str.empty()) {
    auto set = rg::repunit::solutions_for(parse_exact_int(n_str), 3, false);
    if (set.items.size() < 2) {
      std::cerr << "linform: target has fewer than two length>=3 representations\n";
      return kExitUsage;
    }
    pair = rg::linforms::SolutionPair{set.items[0], set.items[1]};
  } else if (x1 > 0 && x2 > 0) {
    pair = rg::linforms::SolutionPair{{Int(x1), static_cast<unsigned>(m1)},
                                      {Int(x2), static_cast<unsigned>(m2)}};
  }
  if (pair) {
    auto lam = rg::linforms::lambda_for_pair(*pair);
    auto mv = rg::linforms::matveev_lower_bound(rg::linforms::pair_form(*pair));
    bool consistent = lam.value >= exp(mv.log_bound);
    bool growth = pair->growth_identity_holds();
    j["lambda"] = {{"value", rg::report::to_double(lam.value)},
                   {"route_direct", rg::report::to_double(lam.route_direct)},
                   {"route_rel_diff", rg::report::to_double(lam.route_rel_diff)},
                   {"upper", rg::report::to_double(lam.upper)},
                   {"window_ok", lam.window_ok}};
    j["matveev"] = {{"zero", mv.zero},
                    {"log_bound", rg::report::to_double(mv.log_bound)},
                    {"B", rg::report::to_double(mv.b_param)},
                    {"omega", rg::report::to_double(mv.omega)},
                    {"consistent", consistent}};
    j["growth_identity"] = growth;
    ok = lam.window_ok && consistent && growth;
  }
  emit(g, j);
  return ok ? kExitOk : kExitFinding;
}

int run_bounds(const GlobalOpts& g, const std::string& n_str,
               const std::string& log_n, const std::string& loglog_n,
               const std::string& variant, unsigned min_m, bool sweep,
               unsigned grid_points, double ll_max, bool skip_recomputed,
               bool low_exponent_variant) {
  const bool want_all = variant != "prime";
  const bool want_prime = variant != "all";
  rg::pipeline::BoundOptions opts;
  opts.min_length_convention = min_m;
  opts.with_recomputed = !skip_recomputed;
  opts.assume_low_exponent_variant = low_exponent_variant;

  if (sweep) {
    Real ll_lo = log(rg::large_n_floor_ln());
    std::cout << "loglog,variant,regime,printed_track,printed_ceiling\n";
    bool all_ok = true;
    rg::pipeline::BoundOptions fast = opts;
    fast.with_recomputed = false;
    for (unsigned i = 0; i < grid_points; ++i) {
      Real ll = ll_lo + (Real(ll_max) - ll_lo) * i / (grid_points - 1);
      LogScale L = LogScale::from_loglog(ll);
      if (want_all) {
        auto rep = rg::pipeline::all_bases_bound(L, fast);
        std::cout << rg::report::to_double(ll) << ",all," << rep.regime << ","
                  << rg::report::to_double(rep.printed_track) << ","
                  << rep.printed_ceiling << "\n";
        all_ok = all_ok &&
                 rep.printed_track <= Real(rep.printed_ceiling) + Real("1e-3");
      }
      if (want_prime) {
        auto rep = rg::pipeline::prime_bases_bound(L, fast);
        std::cout << rg::report::to_double(ll) << ",prime," << rep.regime << ","
                  << rg::report::to_double(rep.printed_track) << ","
                  << rep.printed_ceiling << "\n";
        all_ok = all_ok &&
                 rep.printed_track <= Real(rep.printed_ceiling) + Real("1e-3");
      }
    }
    return all_ok ? kExitOk : kExitFinding;
  }

  LogScale L = [&] {
    if (!loglog_n.empty()) return LogScale::from_loglog(Real(loglog_n));
    if (!log_n.empty()) return LogScale::from_ln(Real(log_n));
    if (!n_str.empty()) return LogScale::from_value(parse_exact_int(n_str));
    throw std::invalid_argument("bounds: one of --n/--log-n/--loglog-n required");
  }();

  json out = json::array();
  bool ok = true;
  auto push = [&](const rg::pipeline::BoundReport& rep) {
    out.push_back(rg::report::bound_report_json(make_ctx(g, "bounds"), rep));
    ok = ok && rep.printed_track <= Real(rep.printed_ceiling) + Real("1e-3");
  };
  if (want_all) push(rg::pipeline::all_bases_bound(L, opts));
  if (want_prime) push(rg::pipeline::prime_bases_bound(L, opts));
  emit(g, out.size() == 1 ? out[0] : json{{"reports", out}});
  return ok ? kExitOk : kExitFinding;
}

int run_multdep(const GlobalOpts& g, long a, long b, const std::string& limit_str,
                bool verify_known, const std::string& golden_path) {
  if (a > 0 && b > 0) {
    auto v = rg::multdep::is_dependent(a, b);
    json j{{"config", rg::report::context_json(make_ctx(g, "multdep"))},
           {"a", a},
           {"b", b},
           {"dependent", v.dependent},
           {"relation_involves_c", v.relation_involves_c},
           {"c_num", numerator(v.c).str()},
           {"c_den", denominator(v.c).str()},
           {"family", v.family}};
    if (v.dependent)
      j["relation"] = json::array(
          {v.relation[0].str(), v.relation[1].str(), v.relation[2].str()});
    if (v.family)
      j["family_params"] = json::array({v.family_k, v.family_s, v.family_t});
    emit(g, j);
    return kExitOk;
  }

  std::uint64_t limit = parse_exact_int(limit_str).convert_to<std::uint64_t>();
  rg::multdep::SearchOptions opts;
  opts.budget = g.budget;
  opts.workers = g.workers;
  auto pairs = rg::multdep::search_exceptional(limit, opts);
  for (const auto& p : pairs)
    std::cout << rg::report::exceptional_pair_json(p, false).dump() << "\n";

  if (verify_known) {
    std::ifstream in(golden_path);
    if (!in) {
      std::cerr << "multdep: cannot open golden file " << golden_path << "\n";
      return kExitUsage;
    }
    std::vector<std::pair<std::uint64_t, std::uint64_t>> expected;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      json jl = json::parse(line);
      if (jl["b"].get<std::uint64_t>() <= limit)
        expected.emplace_back(jl["a"].get<std::uint64_t>(),
                              jl["b"].get<std::uint64_t>());
    }
    std::vector<std::pair<std::uint64_t, std::uint64_t>> got;
    for (const auto& p : pairs) got.emplace_back(p.a, p.b);
    auto by_b = [](const auto& x, const auto& y) {
      return x.second != y.second ? x.second < y.second : x.first < y.first;
    };
    std::sort(expected.begin(), expected.end(), by_b);
    if (got != expected) {
      std::cerr << "multdep: result does not match the golden list\n";
      return kExitFinding;
    }
    std::cerr << "multdep: golden list matched (" << got.size() << " pairs)\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rgkit: exact and high-precision checks for repunit "
               "representations, close-point counts, and the associated "
               "constants"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOpts g;
  if (const char* env = std::getenv("RGKIT_WORKERS")) g.workers = std::atoi(env);
  app.add_option("--format", g.format, "json | csv | tty")
      ->check(CLI::IsMember({"json", "csv", "tty"}));
  app.add_option("--precision", g.precision, "working decimal digits (>= 30)");
  app.add_option("--workers", g.workers, "worker threads");
  app.add_option("--budget", g.budget, "work budget (candidate evaluations)");

  auto* solve = app.add_subcommand("solve", "all repunit representations of N")->fallthrough();
  std::string n_str;
  unsigned min_m = 2;
  bool prime_only = false;
  solve->add_option("--n", n_str, "target N (exact decimal)")->required();
  solve->add_option("--min-m", min_m, "minimum length (2 or 3)")
      ->check(CLI::IsMember({2, 3}));
  solve->add_flag("--prime-only", prime_only, "keep prime bases only");

  auto* coin = app.add_subcommand(
      "coincidence", "values with two length>=3 representations")->fallthrough();
  std::string base_limit = "1000", value_cap = "10^18";
  coin->add_option("--base-limit", base_limit, "largest base enumerated");
  coin->add_option("--value-cap", value_cap, "largest value enumerated");

  auto* cert = app.add_subcommand(
      "certify", "recompute the certified constants and weight tables")->fallthrough();
  bool table1 = false, ptable = false, findings = false;
  int kmax = 10;
  cert->add_flag("--table1", table1, "constants certificate");
  cert->add_flag("--ptable", ptable, "weight-table extraction vs closed forms");
  cert->add_flag("--findings", findings, "print the findings catalog");
  cert->add_option("--kmax", kmax, "table depth");

  auto* lat = app.add_subcommand("lattice",
                                 "enumerate integers close to a curve and "
                                 "compare against the count bound")->fallthrough();
  std::string family = "repunit", m_str = "100000", delta_str = "0.01",
              lat_logn;
  double fam_c = 1.0, fam_theta = 1.5;
  int lat_k = 1;
  bool list_points = false;
  lat->add_option("--family", family,
                  "repunit | power_law | x_log_x | linear | sqrt2_linear");
  lat->add_option("--c", fam_c, "family coefficient");
  lat->add_option("--theta", fam_theta, "power-law exponent");
  lat->add_option("--k", lat_k, "derivative order for the window");
  lat->add_option("--m", m_str, "window start M (window is [M, 2M])");
  lat->add_option("--delta", delta_str, "closeness threshold");
  lat->add_option("--log-n", lat_logn, "ln N for the repunit family");
  lat->add_flag("--points", list_points, "list the close points");
  std::string lat_fixtures;
  lat->add_option("--fixtures", lat_fixtures, "run the committed instance fixtures");

  auto* lin = app.add_subcommand(
      "linform", "linear-form lower bounds for a representation pair")->fallthrough();
  std::string lin_n;
  long x1 = 0, m1 = 0, x2 = 0, m2 = 0;
  int matveev_n = 0;
  lin->add_option("--n", lin_n, "target with two length>=3 representations");
  lin->add_option("--x1", x1, "first base");
  lin->add_option("--m1", m1, "first length");
  lin->add_option("--x2", x2, "second base");
  lin->add_option("--m2", m2, "second length");
  lin->add_option("--matveev-n", matveev_n, "also print the constant C(n)");
  std::string lin_fixtures;
  lin->add_option("--fixtures", lin_fixtures, "run the committed form fixtures");

  auto* bnd = app.add_subcommand(
      "bounds", "reciprocal-sum bound reports and regime sweeps")->fallthrough();
  std::string bnd_n, bnd_logn, bnd_loglogn;
  std::string bnd_variant = "both";
  bool sweep = false, skip_recomputed = false;
  unsigned grid_points = 10000;
  double ll_max = 200.0;
  bnd->add_option("--n", bnd_n, "target N (exact decimal, <= 10^18)");
  bnd->add_option("--log-n", bnd_logn, "ln N (decimal)");
  bnd->add_option("--loglog-n", bnd_loglogn, "ln ln N (decimal)");
  bnd->add_option("--variant", bnd_variant, "all | prime | both")
      ->check(CLI::IsMember({"all", "prime", "both"}));
  bnd->add_option("--min-m", min_m, "minimum-length convention (2 or 3)");
  bnd->add_flag("--sweep", sweep, "CSV sweep over the ln ln N grid");
  bnd->add_option("--grid", grid_points, "sweep grid points");
  bnd->add_option("--ll-max", ll_max, "sweep upper end in ln ln N");
  bnd->add_flag("--skip-recomputed", skip_recomputed,
                "printed track only (fast)");
  bool low_exponent_variant = false;
  bnd->add_flag("--low-exponent-variant", low_exponent_variant,
                "admit the lower printed large-N floor (10^10000 reading)");

  auto* md = app.add_subcommand(
      "multdep", "multiplicative dependence of (a, b, (b-1)/(a-1))")->fallthrough();
  long md_a = 0, md_b = 0;
  std::string limit_str = "10000";
  bool verify_known = false;
  std::string golden_path = "data/exceptional_pairs.jsonl";
  md->add_option("--a", md_a, "first integer");
  md->add_option("--b", md_b, "second integer");
  md->add_option("--limit", limit_str, "search bound for b");
  md->add_flag("--verify-known", verify_known,
               "compare against the committed golden list");
  md->add_option("--golden", golden_path, "golden file path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (g.precision < rg::kMinDigits || g.precision > 1000) {
      std::cerr << "precision must be in [30, 1000]\n";
      return kExitUsage;
    }
    if (g.budget == 0 || g.workers == 0) {
      std::cerr << "budget and workers must be positive\n";
      return kExitUsage;
    }
    rg::set_working_digits(g.precision);
    if (solve->parsed()) return run_solve(g, n_str, min_m, prime_only);
    if (coin->parsed()) return run_coincidence(g, base_limit, value_cap);
    if (cert->parsed()) return run_certify(g, table1, ptable, findings, kmax);
    if (lat->parsed()) {
      if (!lat_fixtures.empty()) return run_lattice_fixtures(g, lat_fixtures);
      return run_lattice(g, family, fam_c, fam_theta, lat_k, m_str, delta_str,
                         lat_logn, list_points);
    }
    if (lin->parsed()) {
      if (!lin_fixtures.empty()) return run_linform_fixtures(g, lin_fixtures);
      return run_linform(g, lin_n, x1, m1, x2, m2, matveev_n);
    }
    if (bnd->parsed())
      return run_bounds(g, bnd_n, bnd_logn, bnd_loglogn, bnd_variant, min_m,
                        sweep, grid_points, ll_max, skip_recomputed,
                        low_exponent_variant);
    if (md->parsed())
      return run_multdep(g, md_a, md_b, limit_str, verify_known, golden_path);
  } catch (const rg::repunit::budget_error& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const rg::multdep::search_budget_error& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFinding;
  }
  return kExitUsage;
}
