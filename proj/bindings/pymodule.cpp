#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rgkit/analytic.hpp"
#include "rgkit/lattice.hpp"
#include "rgkit/linforms.hpp"
#include "rgkit/multdep.hpp"
#include "rgkit/pipeline.hpp"
#include "rgkit/report.hpp"
#include "rgkit/repunit.hpp"
#include "rgkit/version.hpp"

namespace py = pybind11;

namespace {

using rg::Int;
using rg::LogScale;
using rg::Rat;
using rg::Real;

py::object py_bigint(const Int& v) {
  return py::reinterpret_steal<py::object>(
      PyLong_FromString(v.str().c_str(), nullptr, 10));
}

py::object json_to_py(const nlohmann::json& j) {
  using nlohmann::json;
  switch (j.type()) {
    case json::value_t::object: {
      py::dict d;
      for (auto it = j.begin(); it != j.end(); ++it)
        d[py::str(it.key())] = json_to_py(it.value());
      return d;
    }
    case json::value_t::array: {
      py::list l;
      for (const auto& v : j) l.append(json_to_py(v));
      return l;
    }
    case json::value_t::string:
      return py::str(j.get<std::string>());
    case json::value_t::boolean:
      return py::bool_(j.get<bool>());
    case json::value_t::number_integer:
      return py::int_(j.get<long long>());
    case json::value_t::number_unsigned:
      return py::int_(j.get<unsigned long long>());
    case json::value_t::number_float:
      return py::float_(j.get<double>());
    default:
      return py::none();
  }
}

LogScale logscale_from(double log_n) { return LogScale::from_ln(Real(log_n)); }

py::dict rat_dict(const Rat& q) {
  py::dict d;
  d["num"] = py_bigint(numerator(q));
  d["den"] = py_bigint(denominator(q));
  d["decimal"] = Real(q).convert_to<double>();
  return d;
}

py::list solutions_list(const rg::repunit::SolutionSet& s) {
  py::list out;
  for (const auto& it : s.items)
    out.append(py::make_tuple(py_bigint(it.base), it.length));
  return out;
}

rg::lattice::Instance make_instance(const std::string& family, double m,
                                    double delta, double c, double theta,
                                    double log_n, int k) {
  rg::lattice::Instance inst;
  inst.family = family;
  inst.c = c;
  inst.theta = theta;
  inst.k = k;
  inst.m = Real(m);
  inst.delta = Real(delta);
  inst.log_n = Real(log_n);
  return inst;
}

}  // namespace

PYBIND11_MODULE(rgkit, m) {
  m.doc() =
      "Exact and high-precision checks for repunit representations, integer "
      "points close to smooth curves, linear forms in logarithms, and "
      "multiplicative dependence of rational triples.";
  m.attr("__version__") = rg::kVersion;

  m.def("set_precision", [](unsigned digits) { rg::set_working_digits(digits); },
        py::arg("digits"), "Set the working precision in decimal digits (>= 30).");
  m.def("get_precision", [] { return rg::working_digits(); });

  // repunit
  m.def(
      "repunit_value",
      [](long long base, unsigned length) {
        return py_bigint(rg::repunit::repunit_value(Int(base), length));
      },
      py::arg("base"), py::arg("length"),
      "Exact 1 + base + ... + base^(length-1).");
  m.def(
      "solutions_for",
      [](const std::string& n, unsigned min_length, bool prime_only) {
        return solutions_list(
            rg::repunit::solutions_for(Int(n), min_length, prime_only));
      },
      py::arg("n"), py::arg("min_length") = 2, py::arg("prime_only") = false,
      "All (base, length) representations of n, ascending by base.");
  m.def(
      "reciprocal_tail_sum",
      [](const std::string& n, unsigned min_length, bool prime_only) {
        return rat_dict(
            rg::repunit::reciprocal_tail_sum(Int(n), min_length, prime_only));
      },
      py::arg("n"), py::arg("min_length") = 2, py::arg("prime_only") = false);
  m.def(
      "coincidence_search",
      [](const std::string& base_limit, const std::string& value_cap,
         std::uint64_t budget, unsigned workers) {
        rg::repunit::CoincidenceOptions opts{budget, workers};
        py::list out;
        for (const auto& rec :
             rg::repunit::coincidence_search(Int(base_limit), Int(value_cap), opts)) {
          py::dict d;
          d["value"] = py_bigint(rec.value);
          d["representations"] = solutions_list(rec.representations);
          out.append(d);
        }
        return out;
      },
      py::arg("base_limit"), py::arg("value_cap"),
      py::arg("budget") = 100'000'000ull, py::arg("workers") = 1);

  // analytic
  m.def(
      "f_value",
      [](double log_n, double x) {
        return rg::analytic::f_value(logscale_from(log_n), Real(x))
            .convert_to<double>();
      },
      py::arg("log_n"), py::arg("x"));
  m.def(
      "derivative_terms",
      [](int k) {
        py::list out;
        for (const auto& t : rg::analytic::derivative_form(k).terms)
          out.append(py::make_tuple(t.coeff.str(), t.eps, t.a, t.p, t.q));
        return out;
      },
      py::arg("k"),
      "Monomials of g_k as (coeff, eps, 1/log-power, 1/x-power, 1/(x-1)-power).");
  m.def(
      "poly_table",
      [](int k_max) {
        auto table =
            rg::analytic::extract_poly_table(rg::analytic::derivative_forms(k_max));
        py::list out;
        for (int k = 1; k <= k_max; ++k)
          for (int r = 0; r <= k; ++r)
            if (table.has(k, r)) {
              py::dict d;
              d["k"] = k;
              d["r"] = r;
              py::list coeffs;
              for (int i = 0; i <= table.at(k, r).degree(); ++i)
                coeffs.append(table.at(k, r).coeff(i).str());
              d["coeffs"] = coeffs;
              out.append(d);
            }
        return out;
      },
      py::arg("k_max") = 6);
  m.def("tau_constant", [](int k) {
    auto table = rg::analytic::extract_poly_table(rg::analytic::derivative_forms(k));
    return rg::analytic::tau_constant(table, k).convert_to<double>();
  });
  m.def("gamma_constant", [](int k) {
    auto table = rg::analytic::extract_poly_table(rg::analytic::derivative_forms(k));
    return rg::analytic::gamma_constant(table, k).convert_to<double>();
  });
  m.def("certify_constants", [] {
    auto table = rg::analytic::extract_poly_table(rg::analytic::derivative_forms(6));
    auto rows = rg::analytic::certify_constants(table);
    auto findings = rg::analytic::recurrence_findings(table, 6);
    return json_to_py(rg::report::certificate_report({}, rows, findings));
  });
  m.def(
      "envelope_check",
      [](int k, double log10_exponent, double x) {
        LogScale L = LogScale::from_log10_exponent(Real(log10_exponent));
        auto table =
            rg::analytic::extract_poly_table(rg::analytic::derivative_forms(k));
        auto rep = rg::analytic::envelope_check(table, k, L, Real(x));
        py::dict d;
        d["k"] = rep.k;
        d["all_ok"] = rep.all_ok;
        py::list checks;
        for (const auto& c : rep.checks) {
          py::dict cd;
          cd["name"] = c.name;
          cd["lower"] = c.lower.convert_to<double>();
          cd["value"] = c.value.convert_to<double>();
          cd["upper"] = c.upper.convert_to<double>();
          cd["ok"] = c.ok;
          checks.append(cd);
        }
        d["checks"] = checks;
        return d;
      },
      py::arg("k"), py::arg("log10_exponent"), py::arg("x"),
      "Derivative envelope verdicts for g_k at N = 10^log10_exponent.");

  // lattice
  m.def(
      "enumerate_close",
      [](const std::string& family, double m, double delta, double c,
         double theta, double log_n, int k, std::uint64_t budget,
         unsigned workers) {
        auto inst = make_instance(family, m, delta, c, theta, log_n, k);
        rg::lattice::CloseSetQuery q{rg::lattice::make_point_function(inst),
                                     inst.m, inst.delta, budget, workers};
        auto close = rg::lattice::enumerate_close(q);
        py::dict d;
        d["points"] = close.points;
        d["ambiguous"] = close.ambiguous;
        return d;
      },
      py::arg("family"), py::arg("m"), py::arg("delta"), py::arg("c") = 1.0,
      py::arg("theta") = 0.0, py::arg("log_n") = 0.0, py::arg("k") = 1,
      py::arg("budget") = 10'000'000ull, py::arg("workers") = 1);
  m.def(
      "derivative_test_bound",
      [](int k, double lambda, double c, double m, double delta) {
        auto bound = rg::lattice::derivative_test_bound(
            {k, Real(lambda), Real(c)}, Real(m), Real(delta));
        py::dict d;
        d["bound"] = bound.bound.convert_to<double>();
        d["alpha"] = bound.alpha.convert_to<double>();
        d["applicable"] = bound.applicable;
        return d;
      },
      py::arg("k"), py::arg("lambda"), py::arg("c"), py::arg("m"),
      py::arg("delta"));
  m.def(
      "repunit_count_bound",
      [](int k, double log_n, double m) {
        return rg::lattice::repunit_count_bound(k, logscale_from(log_n), Real(m))
            .convert_to<double>();
      },
      py::arg("k"), py::arg("log_n"), py::arg("m"));

  // linforms
  m.def(
      "matveev_constant",
      [](int n) { return rg::linforms::matveev_constant(n).convert_to<double>(); },
      py::arg("n"));
  m.def(
      "matveev_lower_bound",
      [](const std::vector<std::tuple<std::string, std::string, long long>>& entries) {
        rg::linforms::LinearForm form;
        for (const auto& [num, den, b] : entries)
          form.entries.push_back({Rat(Int(num), Int(den)), Int(b)});
        auto r = rg::linforms::matveev_lower_bound(form);
        py::dict d;
        d["zero"] = r.zero;
        d["log_bound"] = r.log_bound.convert_to<double>();
        d["B"] = r.b_param.convert_to<double>();
        d["omega"] = r.omega.convert_to<double>();
        return d;
      },
      py::arg("entries"),
      "Entries are (numerator, denominator, exponent) triples.");
  m.def(
      "lambda_for_pair",
      [](long long x1, unsigned m1, long long x2, unsigned m2) {
        auto lam = rg::linforms::lambda_for_pair(
            {{Int(x1), m1}, {Int(x2), m2}});
        py::dict d;
        d["value"] = lam.value.convert_to<double>();
        d["route_direct"] = lam.route_direct.convert_to<double>();
        d["route_rel_diff"] = lam.route_rel_diff.convert_to<double>();
        d["upper"] = lam.upper.convert_to<double>();
        d["window_ok"] = lam.window_ok;
        return d;
      },
      py::arg("x1"), py::arg("m1"), py::arg("x2"), py::arg("m2"));
  m.def(
      "second_base_threshold",
      [](double log_n) {
        auto t = rg::linforms::second_base_threshold(logscale_from(log_n));
        return py::make_tuple(
            t.value.convert_to<double>(),
            t.regime == rg::linforms::ThresholdRegime::matveev ? "matveev" : "desk");
      },
      py::arg("log_n"));
  m.def(
      "second_base_contradiction",
      [](double loglog_n) {
        auto r = rg::linforms::second_base_contradiction(
            LogScale::from_loglog(Real(loglog_n)));
        py::dict d;
        d["lhs"] = r.lhs.convert_to<double>();
        d["rhs"] = r.rhs.convert_to<double>();
        d["contradiction"] = r.contradiction;
        return d;
      },
      py::arg("loglog_n"));

  // pipeline
  auto bound_to_py = [](const rg::pipeline::BoundReport& rep) {
    return json_to_py(rg::report::bound_report_json({}, rep));
  };
  m.def(
      "all_bases_bound",
      [bound_to_py](double loglog_n, unsigned min_m, bool with_recomputed) {
        rg::pipeline::BoundOptions opts;
        opts.min_length_convention = min_m;
        opts.with_recomputed = with_recomputed;
        return bound_to_py(
            rg::pipeline::all_bases_bound(LogScale::from_loglog(Real(loglog_n)), opts));
      },
      py::arg("loglog_n"), py::arg("min_m") = 2, py::arg("with_recomputed") = true);
  m.def(
      "prime_bases_bound",
      [bound_to_py](double loglog_n, bool with_recomputed) {
        rg::pipeline::BoundOptions opts;
        opts.with_recomputed = with_recomputed;
        return bound_to_py(rg::pipeline::prime_bases_bound(
            LogScale::from_loglog(Real(loglog_n)), opts));
      },
      py::arg("loglog_n"), py::arg("with_recomputed") = true);
  m.def(
      "dyadic_block_sum",
      [](int k, double loglog_n, double lo, double hi) {
        auto s = rg::pipeline::dyadic_block_sum(
            k, LogScale::from_loglog(Real(loglog_n)), Real(lo), Real(hi));
        py::dict d;
        d["inner"] = s.inner.convert_to<double>();
        d["cover"] = s.cover.convert_to<double>();
        d["folded"] = s.folded.convert_to<double>();
        d["inner_blocks"] = s.inner_blocks;
        d["cover_blocks"] = s.cover_blocks;
        return d;
      },
      py::arg("k"), py::arg("loglog_n"), py::arg("lo"), py::arg("hi"));
  m.def("fold_coefficient", [](int k) {
    return rg::pipeline::fold_coefficient(k).convert_to<double>();
  });
  m.def(
      "prime_interval_bound",
      [](double log_n, double w, bool desk_floor) {
        return rg::pipeline::prime_interval_bound(
                   logscale_from(log_n), Real(w),
                   desk_floor ? rg::pipeline::PrimeHeadFloor::desk
                              : rg::pipeline::PrimeHeadFloor::power_of_log)
            .convert_to<double>();
      },
      py::arg("log_n"), py::arg("w"), py::arg("desk_floor") = false);
  m.def(
      "prime_sum_oracle",
      [](std::uint64_t lo, std::uint64_t hi) {
        return rg::pipeline::prime_sum_oracle(lo, hi).convert_to<double>();
      },
      py::arg("lo"), py::arg("hi"));
  m.def("support_tail", [](double loglog_n) {
    return rg::pipeline::support_tail(LogScale::from_loglog(Real(loglog_n)))
        .convert_to<double>();
  });
  m.def("findings", [] {
    py::list out;
    for (const auto& f : rg::pipeline::findings_catalog()) {
      py::dict d;
      d["id"] = f.id;
      d["detail"] = f.detail;
      out.append(d);
    }
    return out;
  });

  // multdep
  m.def(
      "is_dependent",
      [](std::uint64_t a, std::uint64_t b) {
        auto v = rg::multdep::is_dependent(a, b);
        py::dict d;
        d["dependent"] = v.dependent;
        d["relation_involves_c"] = v.relation_involves_c;
        d["c"] = rat_dict(v.c);
        if (v.dependent)
          d["relation"] = py::make_tuple(py_bigint(v.relation[0]),
                                         py_bigint(v.relation[1]),
                                         py_bigint(v.relation[2]));
        d["family"] = v.family;
        if (v.family)
          d["family_params"] = py::make_tuple(v.family_k, v.family_s, v.family_t);
        return d;
      },
      py::arg("a"), py::arg("b"));
  m.def(
      "in_family",
      [](std::uint64_t a, std::uint64_t b) {
        auto fm = rg::multdep::in_family(a, b);
        return py::make_tuple(fm.in_family,
                              py::make_tuple(fm.k, fm.s, fm.t));
      },
      py::arg("a"), py::arg("b"));
  m.def(
      "search_exceptional",
      [](std::uint64_t limit, std::uint64_t budget, unsigned workers) {
        rg::multdep::SearchOptions opts{budget, workers};
        py::list out;
        for (const auto& p : rg::multdep::search_exceptional(limit, opts))
          out.append(json_to_py(rg::report::exceptional_pair_json(p, false)));
        return out;
      },
      py::arg("limit"), py::arg("budget") = 4'000'000'000ull,
      py::arg("workers") = 1);
}
