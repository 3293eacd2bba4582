#include "rgkit/report.hpp"

#include <sstream>

#include "rgkit/version.hpp"

namespace rg::report {

namespace {

std::string int_str(const Int& v) { return v.str(); }

void csv_escape(std::ostringstream& os, const std::string& s) {
  bool needs = s.find_first_of(",\"\n") != std::string::npos;
  if (!needs) {
    os << s;
    return;
  }
  os << '"';
  for (char c : s) {
    if (c == '"') os << '"';
    os << c;
  }
  os << '"';
}

void flatten(const json& node, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>& out) {
  if (node.is_object()) {
    for (auto it = node.begin(); it != node.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(),
              out);
  } else if (node.is_array()) {
    for (std::size_t i = 0; i < node.size(); ++i)
      flatten(node[i], prefix + "[" + std::to_string(i) + "]", out);
  } else if (node.is_string()) {
    out.emplace_back(prefix, node.get<std::string>());
  } else {
    out.emplace_back(prefix, node.dump());
  }
}

}  // namespace

json context_json(const RunContext& ctx) {
  return json{{"version", kVersion},
              {"subcommand", ctx.subcommand},
              {"format", ctx.format},
              {"precision_digits", ctx.precision_digits},
              {"workers", ctx.workers},
              {"budget", ctx.budget}};
}

double to_double(const Real& r) { return r.convert_to<double>(); }

json rat_json(const Rat& q) {
  return json{{"num", int_str(numerator(q))},
              {"den", int_str(denominator(q))},
              {"decimal", to_double(Real(q))}};
}

json solution_set_json(const repunit::SolutionSet& s) {
  json items = json::array();
  for (const auto& it : s.items)
    items.push_back(json{{"base", int_str(it.base)}, {"length", it.length}});
  return json{{"target", int_str(s.target)},
              {"min_length", s.min_length},
              {"prime_base_only", s.prime_base_only},
              {"items", items}};
}

json solve_report(const RunContext& ctx, const repunit::SolutionSet& s,
                  const Rat& tail_sum) {
  json j = solution_set_json(s);
  j["config"] = context_json(ctx);
  j["tail_sum"] = rat_json(tail_sum);
  return j;
}

json coincidence_report(const RunContext& ctx,
                        const std::vector<repunit::CoincidenceRecord>& records) {
  json recs = json::array();
  for (const auto& r : records)
    recs.push_back(json{{"value", int_str(r.value)},
                        {"representations", solution_set_json(r.representations)}});
  return json{{"config", context_json(ctx)}, {"records", recs}};
}

json certificate_report(const RunContext& ctx,
                        const std::vector<analytic::CertifyRow>& rows,
                        const std::vector<analytic::TableFinding>& table_findings) {
  json jrows = json::array();
  bool all_ok = true;
  for (const auto& r : rows) {
    all_ok = all_ok && r.ok;
    jrows.push_back(json{{"k", r.k},
                         {"tau_printed", r.tau_printed},
                         {"tau_recomputed", to_double(r.tau_recomputed)},
                         {"tau_rel_err", to_double(r.tau_rel_err)},
                         {"gamma_printed", r.gamma_printed},
                         {"gamma_recomputed", to_double(r.gamma_recomputed)},
                         {"gamma_rel_err", to_double(r.gamma_rel_err)},
                         {"c_printed", r.c_printed},
                         {"main_term", to_double(r.margin.main_term)},
                         {"margin", to_double(r.margin.margin)},
                         {"absorption_ok", r.margin.absorption_ok},
                         {"closed_form_match", r.closed_form_match},
                         {"ok", r.ok}});
  }
  json tf = json::array();
  for (const auto& f : table_findings)
    tf.push_back(json{{"k", f.k},
                      {"r", f.r},
                      {"printed", f.printed},
                      {"extracted", f.extracted}});
  json findings = json::array();
  for (const auto& f : pipeline::findings_catalog())
    findings.push_back(json{{"id", f.id}, {"detail", f.detail}});
  return json{{"config", context_json(ctx)},
              {"rows", jrows},
              {"recurrence_findings", tf},
              {"findings", findings},
              {"ok", all_ok}};
}

json bound_report_json(const RunContext& ctx, const pipeline::BoundReport& rep) {
  json findings = json::array();
  for (const auto& f : rep.findings)
    findings.push_back(json{{"id", f.id}, {"detail", f.detail}});
  json j{{"config", context_json(ctx)},
         {"variant", rep.variant},
         {"regime", rep.regime},
         {"loglog", to_double(rep.loglog)},
         {"printed_track", to_double(rep.printed_track)},
         {"printed_ceiling", rep.printed_ceiling},
         {"recomputed_track", to_double(rep.recomputed_track)},
         {"tail", to_double(rep.tail)},
         {"final_value", to_double(rep.final_value)},
         {"printed_final", rep.printed_final},
         {"min_length_convention", rep.min_length_convention},
         {"findings", findings}};
  if (rep.printed_product > 0) {
    j["product_value"] = to_double(rep.product_value);
    j["printed_product"] = rep.printed_product;
  }
  return j;
}

json exceptional_pair_json(const multdep::ExceptionalPair& p, bool family) {
  return json{{"a", p.a},
              {"b", p.b},
              {"c_num", int_str(numerator(p.c))},
              {"c_den", int_str(denominator(p.c))},
              {"relation", json::array({p.relation[0].str(), p.relation[1].str(),
                                        p.relation[2].str()})},
              {"family", family}};
}

json findings_report(const RunContext& ctx) {
  json arr = json::array();
  for (const auto& f : pipeline::findings_catalog())
    arr.push_back(json{{"id", f.id}, {"detail", f.detail}});
  return json{{"config", context_json(ctx)}, {"findings", arr}};
}

std::string to_csv(const json& report) {
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(report, "", rows);
  std::ostringstream os;
  os << "key,value\n";
  for (const auto& [k, v] : rows) {
    csv_escape(os, k);
    os << ',';
    csv_escape(os, v);
    os << '\n';
  }
  return os.str();
}

}  // namespace rg::report
