#include "fmlinv/cli.hpp"

#include "fmlinv/deform.hpp"
#include "fmlinv/errors.hpp"
#include "fmlinv/io.hpp"
#include "fmlinv/oracle.hpp"
#include "fmlinv/refinement.hpp"
#include "fmlinv/triparam.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace fmlinv {

namespace {

struct Options {
  bool json = false;
  bool verify = false;
  bool require_admissible = false;
  bool allow_unchecked = false;
  std::string file;
  std::string refinement;
  std::string family;
  std::string output;
};

// Thrown for bad references inside an otherwise parseable file (unknown
// refinement or family name).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Context {
  const Options& opt;
  std::ostream& out;
  std::ostream& err;
  std::vector<std::string> mismatches;  // oracle or cross-check disagreements

  void emit(const Json& doc) { out << doc.dump(2) << "\n"; }

  int finish(int code) {
    if (!mismatches.empty()) {
      for (const auto& m : mismatches) err << "verification mismatch: " << m << "\n";
      return kExitOracleMismatch;
    }
    return code;
  }
};

template <typename T, typename F>
std::string join(const std::vector<T>& values, F&& format, const char* sep = ", ") {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s += sep;
    s += format(values[i]);
  }
  return s;
}

std::string show(const Scalar& q) { return to_string(q); }
std::string show_long(long v) { return std::to_string(v); }

Json subspace_json(const Subspace& w) {
  Json gens = Json::array();
  for (const auto& b : w.basis()) gens.push_back(vector_json(b));
  return gens;
}

Json optional_scalar(const std::optional<Scalar>& q) { return q ? rational_json(*q) : Json(nullptr); }

bool eigenvalues_distinct_rational(const FilteredModule& m) {
  const auto eig = eigen_decomposition(m.phi);
  return eig.splits && eig.distinct();
}

Workspace load(const Options& opt) { return load_workspace(opt.file); }

const Flag& find_refinement(const Workspace& w, const std::string& name) {
  try {
    return w.refinement(name);
  } catch (const std::out_of_range& e) {
    throw UsageError(e.what());
  }
}

void require_valid(const FilteredModule& m) {
  const auto report = validate_module(m);
  if (!report.ok()) throw DomainError(ErrorCode::InvalidInput, "module is invalid: " + report.violations.front());
}

int cmd_check(Context& ctx) {
  const Workspace w = load(ctx.opt);
  const auto validation = validate_module(w.module);
  Json doc;
  doc["command"] = "check";
  doc["dimension"] = w.module.dim();
  doc["p"] = w.module.p;
  doc["valid"] = validation.ok();
  doc["violations"] = validation.violations;

  if (!validation.ok()) {
    if (ctx.opt.json) {
      ctx.emit(doc);
    } else {
      ctx.out << "module: n = " << w.module.dim() << ", p = " << w.module.p << "\nvalidation: FAILED\n";
      for (const auto& v : validation.violations) ctx.out << "  - " << v << "\n";
    }
    return kExitDomainFailure;
  }

  std::vector<Subspace> candidates = w.candidates;
  for (const auto& r : w.refinements)
    for (std::size_t i = 1; i < r.flag.ambient_dim(); ++i) candidates.push_back(r.flag.step(i));

  const HodgeData hodge = hodge_data(w.module);
  std::optional<NewtonData> newton;
  try {
    newton = newton_data(w.module);
  } catch (const DomainError&) {
  }
  const AdmissibilityReport adm = is_admissible(w.module, candidates);

  doc["hodge"] = {{"weights", hodge.weights}, {"t_hodge", hodge.t_hodge}};
  doc["newton"] = newton ? Json{{"slopes", newton->slopes}, {"t_newton", newton->t_newton}} : Json(nullptr);
  Json checks = Json::array();
  for (const auto& c : adm.checks)
    checks.push_back({{"dimension", c.space.dim()},
                      {"basis", subspace_json(c.space)},
                      {"t_hodge", c.t_hodge},
                      {"t_newton", c.t_newton},
                      {"holds", c.holds}});
  doc["admissibility"] = {{"verdict", to_string(adm.verdict)},
                          {"certifying", adm.certifying},
                          {"t_hodge", adm.t_hodge},
                          {"t_newton", adm.t_newton},
                          {"checks", checks},
                          {"skipped_candidates", adm.skipped_candidates.size()},
                          {"note", adm.note}};

  if (ctx.opt.verify) {
    if (eigenvalues_distinct_rational(w.module)) {
      const auto oracle = oracle_admissible(w.module);
      const bool primary = adm.verdict == AdmissibilityVerdict::Admissible;
      if (oracle.admissible != primary)
        ctx.mismatches.push_back(std::string("admissibility: primary ") + to_string(adm.verdict) + ", oracle " +
                                 (oracle.admissible ? "Admissible" : "NotAdmissible"));
      doc["verify"] = {{"oracle_admissible", oracle.admissible}, {"subsets_tested", oracle.subsets_tested}};
    } else {
      doc["verify"] = {{"skipped", "oracle needs distinct rational eigenvalues"}};
    }
  }

  int code = kExitOk;
  if (ctx.opt.require_admissible && adm.verdict != AdmissibilityVerdict::Admissible) code = kExitDomainFailure;

  if (ctx.opt.json) {
    ctx.emit(doc);
  } else {
    ctx.out << "module: n = " << w.module.dim() << ", p = " << w.module.p << "\nvalidation: ok\n";
    ctx.out << "hodge weights: " << join(hodge.weights, show_long, " ") << " (t_H = " << hodge.t_hodge << ")\n";
    if (newton)
      ctx.out << "newton slopes: " << join(newton->slopes, show_long, " ") << " (t_N = " << newton->t_newton << ")\n";
    else
      ctx.out << "newton slopes: unavailable (irrational eigenvalues)\n";
    ctx.out << "admissibility: " << to_string(adm.verdict) << (adm.certifying ? " (certifying)" : " (non-certifying)")
            << "\n";
    for (const auto& c : adm.checks)
      ctx.out << "  dim " << c.space.dim() << ": t_H = " << c.t_hodge << ", t_N = " << c.t_newton
              << (c.holds ? "" : "  VIOLATED") << "\n";
    if (!adm.note.empty()) ctx.out << "  note: " << adm.note << "\n";
    if (code != kExitOk) ctx.out << "required admissibility not established\n";
  }
  return ctx.finish(code);
}

Json graded_json(const GradedMonodromy& g) {
  Json arr = Json::array();
  for (std::size_t i = 0; i < g.targets.size(); ++i) {
    if (g.targets[i])
      arr.push_back({{"i", i + 1}, {"target", g.targets[i]->j}, {"coeff", rational_json(g.targets[i]->coeff)}});
    else
      arr.push_back({{"i", i + 1}, {"target", nullptr}});
  }
  return arr;
}

Json pairs_json(const std::vector<CriticalPair>& pairs) {
  Json arr = Json::array();
  for (const auto& p : pairs) arr.push_back({p.s, p.t});
  return arr;
}

std::string pairs_text(const std::vector<CriticalPair>& pairs) {
  if (pairs.empty()) return "none";
  return join(pairs, [](const CriticalPair& p) { return "(" + std::to_string(p.s) + "," + std::to_string(p.t) + ")"; });
}

Json report_json(const LInvariantReport& report) {
  Json arr = Json::array();
  for (const auto& e : report.entries)
    arr.push_back({{"s", e.s},
                   {"t", e.t},
                   {"verdict", to_string(e.verdict)},
                   {"l_invariant", optional_scalar(e.l_invariant)},
                   {"case_sub", e.decomposition.case_sub},
                   {"case_quot", e.decomposition.case_quot}});
  return arr;
}

void verify_refinement(Context& ctx, const Refinement& r, const LInvariantReport& report, const std::string& label) {
  const auto primary = critical_indices(r);
  const auto oracle = oracle_critical_indices(r);
  if (primary != oracle)
    ctx.mismatches.push_back(label + "critical pairs: primary " + pairs_text(primary) + ", oracle " + pairs_text(oracle));
  for (const auto& e : report.entries) {
    if (e.verdict != StrongVerdict::StronglyCritical) continue;
    const Scalar l = oracle_l_invariant(r, e.s, e.decomposition);
    if (!e.l_invariant || l != *e.l_invariant)
      ctx.mismatches.push_back(label + "L at s=" + std::to_string(e.s) + ": oracle " + to_string(l));
  }
}

int cmd_analyze(Context& ctx) {
  const Workspace w = load(ctx.opt);
  require_valid(w.module);
  const Refinement r = make_refinement(w.module, find_refinement(w, ctx.opt.refinement));
  const GradedMonodromy g = graded_monodromy(r);
  const auto pairs = critical_indices(r);
  const LInvariantReport report = l_invariant_report(r);
  if (ctx.opt.verify) verify_refinement(ctx, r, report, "");

  if (ctx.opt.json) {
    Json doc;
    doc["command"] = "analyze";
    doc["refinement"] = ctx.opt.refinement;
    doc["dimension"] = r.dim();
    doc["p"] = r.base.p;
    doc["alphas"] = vector_json(r.alphas);
    doc["ks"] = r.ks;
    doc["graded_monodromy"] = graded_json(g);
    doc["critical_pairs"] = pairs_json(pairs);
    doc["strong_criticality"] = report_json(report);
    if (ctx.opt.verify) doc["verified"] = ctx.mismatches.empty();
    ctx.emit(doc);
  } else {
    ctx.out << "refinement " << ctx.opt.refinement << " (n = " << r.dim() << ", p = " << r.base.p << ")\n";
    ctx.out << "  alpha: " << join(r.alphas, show) << "\n";
    ctx.out << "  k:     " << join(r.ks, show_long) << "\n";
    ctx.out << "graded monodromy:\n";
    for (std::size_t i = 0; i < g.targets.size(); ++i) {
      ctx.out << "  gr_" << i + 1 << " -> ";
      if (g.targets[i])
        ctx.out << to_string(g.targets[i]->coeff) << " * gr_" << g.targets[i]->j << "\n";
      else
        ctx.out << "0\n";
    }
    ctx.out << "critical pairs: " << pairs_text(pairs) << "\n";
    for (const auto& e : report.entries) {
      ctx.out << "  s = " << e.s << ", t = " << e.t << ": " << to_string(e.verdict);
      if (e.l_invariant) ctx.out << ", L = " << to_string(*e.l_invariant);
      ctx.out << "\n";
    }
    if (ctx.opt.verify) ctx.out << "verification: " << (ctx.mismatches.empty() ? "ok" : "MISMATCH") << "\n";
  }
  return ctx.finish(kExitOk);
}

int cmd_dual(Context& ctx) {
  const Workspace w = load(ctx.opt);
  require_valid(w.module);
  const Refinement r = make_refinement(w.module, find_refinement(w, ctx.opt.refinement));
  const Refinement d = dual_refinement(r);

  Workspace dual;
  dual.module = d.base;
  dual.refinements.push_back({ctx.opt.refinement, d.flag});
  const Json doc = workspace_json(dual);

  if (ctx.opt.verify) {
    const auto report = l_invariant_report(r);
    const auto dual_report = l_invariant_report(d);
    verify_refinement(ctx, d, dual_report, "dual ");
    const std::size_t n = r.dim();
    std::vector<CriticalPair> mapped;
    for (const auto& p : critical_indices(r)) mapped.push_back({n + 1 - p.t, n + 1 - p.s});
    std::sort(mapped.begin(), mapped.end());
    if (mapped != critical_indices(d)) ctx.mismatches.push_back("dual critical pairs are not (n+1-t, n+1-s)");
    for (const auto& e : report.entries) {
      for (const auto& de : dual_report.entries) {
        if (de.s != n + 1 - e.t) continue;
        if (de.verdict != e.verdict || de.l_invariant != e.l_invariant)
          ctx.mismatches.push_back("dual strong criticality differs at s=" + std::to_string(e.s));
      }
    }
    const Refinement back = dual_refinement(d);
    if (!(back.base.phi == r.base.phi && back.base.monodromy == r.base.monodromy &&
          back.base.filtration.canonical() == r.base.filtration.canonical() && back.flag.vectors() == r.flag.vectors()))
      ctx.mismatches.push_back("double dual differs from the original");
  }

  if (ctx.opt.output.empty()) {
    ctx.emit(doc);
  } else {
    std::ofstream file(ctx.opt.output);
    if (!file) throw UsageError("cannot write " + ctx.opt.output);
    file << doc.dump(2) << "\n";
    if (ctx.opt.json)
      ctx.emit({{"command", "dual"}, {"output", ctx.opt.output}, {"critical_pairs", pairs_json(critical_indices(d))}});
    else
      ctx.out << "dual module and refinement " << ctx.opt.refinement << " written to " << ctx.opt.output << "\n";
  }
  return ctx.finish(kExitOk);
}

int cmd_params(Context& ctx) {
  const Workspace w = load(ctx.opt);
  require_valid(w.module);
  const Refinement r = make_refinement(w.module, find_refinement(w, ctx.opt.refinement));
  const auto chars = refinement_to_parameters(r);
  const auto [alphas, ks] = parameters_to_invariants(chars, r.base.p);
  if (alphas != r.alphas || ks != r.ks) ctx.mismatches.push_back("parameters do not invert to (alpha, k)");

  if (ctx.opt.json) {
    Json arr = Json::array();
    for (const auto& c : chars) arr.push_back(character_json(c));
    ctx.emit({{"command", "params"}, {"refinement", ctx.opt.refinement}, {"characters", arr}});
  } else {
    ctx.out << "triangulation parameters for " << ctx.opt.refinement << " (p = " << r.base.p << ")\n";
    for (std::size_t i = 0; i < chars.size(); ++i)
      ctx.out << "  delta_" << i + 1 << "(p) = " << to_string(chars[i].value_at_p)
              << ", w = " << to_string(chars[i].weight) << "\n";
  }
  return ctx.finish(kExitOk);
}

int cmd_max_monodromy(Context& ctx) {
  const Workspace w = load(ctx.opt);
  require_valid(w.module);
  const MaxMonodromyResult res = max_monodromy_refinement(w.module);
  if (!res.routes_agree()) ctx.mismatches.push_back("ell_{s,s+1} differs from the refinement L-invariants");
  if (ctx.opt.verify) {
    const Refinement r = make_refinement(w.module, res.flag);
    verify_refinement(ctx, r, l_invariant_report(r), "");
  }

  if (ctx.opt.json) {
    Json flag = Json::array();
    for (const auto& v : res.flag.vectors()) flag.push_back(vector_json(v));
    Json refine_l = Json::array();
    for (const auto& l : res.refine_l_values) refine_l.push_back(optional_scalar(l));
    ctx.emit({{"command", "max-monodromy"},
              {"flag", flag},
              {"weights", res.transform.weights},
              {"ell", matrix_json(res.transform.ell)},
              {"l_values", vector_json(res.l_values)},
              {"refine_l_values", refine_l},
              {"routes_agree", res.routes_agree()}});
  } else {
    ctx.out << "canonical flag e_i = N^(n-i) e_n:\n";
    for (std::size_t i = 1; i <= res.flag.ambient_dim(); ++i)
      ctx.out << "  e_" << i << " = " << to_string(res.flag.vector(i)) << "\n";
    ctx.out << "weights: " << join(res.transform.weights, show_long) << "\n";
    ctx.out << "ell matrix: " << to_string(res.transform.ell) << "\n";
    ctx.out << "ell_{s,s+1}: " << join(res.l_values, show) << "\n";
    ctx.out << "L-invariants: "
            << join(res.refine_l_values,
                    [](const std::optional<Scalar>& l) { return l ? to_string(*l) : std::string("-"); })
            << "\n";
    ctx.out << "cross-check: " << (res.routes_agree() ? "agree" : "DISAGREE") << "\n";
  }
  return ctx.finish(kExitOk);
}

int cmd_deform_check(Context& ctx) {
  const Workspace w = load(ctx.opt);
  require_valid(w.module);
  const Refinement r = make_refinement(w.module, find_refinement(w, ctx.opt.refinement));
  FirstOrderFamily family;
  try {
    family = w.family(ctx.opt.family);
  } catch (const std::out_of_range& e) {
    throw UsageError(e.what());
  }
  const LInvariantReport report = l_invariant_report(r);
  if (ctx.opt.verify) verify_refinement(ctx, r, report, "");
  const DeformationReport dr = check_deformation(r, report, family);

  const bool unchecked_blocks = dr.has_unchecked() && !ctx.opt.allow_unchecked;
  const int code = dr.passed() && !unchecked_blocks ? kExitOk : kExitDomainFailure;

  std::vector<std::string> residuals;
  for (const auto& c : dr.checks)
    if (c.residual) residuals.push_back(to_string(*c.residual));

  if (ctx.opt.json) {
    Json rows = Json::array();
    for (const auto& c : dr.checks)
      rows.push_back({{"s", c.s},
                      {"t", c.t},
                      {"verdict", to_string(c.verdict)},
                      {"l_invariant", optional_scalar(c.l_invariant)},
                      {"residual", optional_scalar(c.residual)},
                      {"status", to_string(c.status)}});
    ctx.emit({{"command", "deform-check"},
              {"refinement", ctx.opt.refinement},
              {"family", ctx.opt.family},
              {"constraints", rows},
              {"base_mismatches", dr.base_mismatches},
              {"passed", code == kExitOk}});
  } else {
    ctx.out << "deformation check: refinement " << ctx.opt.refinement << ", family " << ctx.opt.family << "\n";
    ctx.out << "  s  t  verdict              L        residual  status\n";
    for (const auto& c : dr.checks) {
      ctx.out << "  " << std::left << std::setw(3) << c.s << std::setw(3) << c.t << std::setw(21) << to_string(c.verdict)
              << std::setw(9) << (c.l_invariant ? to_string(*c.l_invariant) : "-") << std::setw(10)
              << (c.residual ? to_string(*c.residual) : "-") << to_string(c.status) << "\n";
    }
    ctx.out << "residuals: " << (residuals.empty() ? "none" : join(residuals, [](const std::string& s) { return s; }))
            << "\n";
    for (const auto& m : dr.base_mismatches) ctx.out << "base point mismatch: " << m << "\n";
    if (dr.has_unchecked())
      ctx.out << (ctx.opt.allow_unchecked ? "warning" : "error") << ": some constraints are unchecked\n";
    ctx.out << "result: " << (code == kExitOk ? "PASS" : "FAIL") << "\n";
  }
  return ctx.finish(code);
}

int cmd_refinements(Context& ctx) {
  const Workspace w = load(ctx.opt);
  require_valid(w.module);
  const auto flags = enumerate_refinements(w.module);
  Json arr = Json::array();
  if (!ctx.opt.json) ctx.out << flags.size() << " refinement(s)\n";
  for (std::size_t idx = 0; idx < flags.size(); ++idx) {
    const Refinement r = make_refinement(w.module, flags[idx]);
    if (ctx.opt.verify) verify_refinement(ctx, r, l_invariant_report(r), "refinement " + std::to_string(idx + 1) + " ");
    if (ctx.opt.json) {
      Json flag = Json::array();
      for (const auto& v : flags[idx].vectors()) flag.push_back(vector_json(v));
      arr.push_back({{"flag", flag}, {"alphas", vector_json(r.alphas)}, {"ks", r.ks},
                     {"critical_pairs", pairs_json(critical_indices(r))}});
    } else {
      ctx.out << "  [" << idx + 1 << "] alpha = (" << join(r.alphas, show) << "), k = (" << join(r.ks, show_long)
              << "), critical " << pairs_text(critical_indices(r)) << "\n";
      for (const auto& v : flags[idx].vectors()) ctx.out << "      " << to_string(v) << "\n";
    }
  }
  if (ctx.opt.json) ctx.emit({{"command", "refinements"}, {"refinements", arr}});
  return ctx.finish(kExitOk);
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Exact invariants of filtered (phi, N)-modules and their refinements", "fmlinv"};
  app.require_subcommand(1);
  app.add_flag("--json", opt.json, "Machine-readable output");
  app.add_flag("--verify", opt.verify, "Run the brute-force oracles and fail on any disagreement");

  auto file_arg = [&](CLI::App* sub) { sub->add_option("FILE", opt.file, "Workspace JSON file")->required(); };
  auto ref_arg = [&](CLI::App* sub) {
    sub->add_option("--refinement", opt.refinement, "Name of a refinement in the file")->required();
  };

  auto* check = app.add_subcommand("check", "Validate the module and test admissibility");
  file_arg(check);
  check->add_flag("--require-admissible", opt.require_admissible, "Fail unless admissibility is certified");
  auto* analyze = app.add_subcommand("analyze", "Graded monodromy, critical pairs and L-invariants");
  file_arg(analyze);
  ref_arg(analyze);
  auto* dual = app.add_subcommand("dual", "Write the dual module and dual refinement");
  file_arg(dual);
  ref_arg(dual);
  dual->add_option("-o,--output", opt.output, "Output file (stdout when omitted)");
  auto* params = app.add_subcommand("params", "Triangulation parameters of a refinement");
  file_arg(params);
  ref_arg(params);
  auto* maxmono = app.add_subcommand("max-monodromy", "Canonical flag and Hodge transform for maximal monodromy");
  file_arg(maxmono);
  auto* deform = app.add_subcommand("deform-check", "Evaluate the first-order deformation constraints");
  file_arg(deform);
  ref_arg(deform);
  deform->add_option("--family", opt.family, "Name of a family in the file")->required();
  deform->add_flag("--allow-unchecked", opt.allow_unchecked, "Treat unchecked constraints as warnings");
  auto* refs = app.add_subcommand("refinements", "Enumerate all refinements (distinct eigenvalues)");
  file_arg(refs);
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  Context ctx{opt, out, err, {}};
  try {
    if (*check) return cmd_check(ctx);
    if (*analyze) return cmd_analyze(ctx);
    if (*dual) return cmd_dual(ctx);
    if (*params) return cmd_params(ctx);
    if (*maxmono) return cmd_max_monodromy(ctx);
    if (*deform) return cmd_deform_check(ctx);
    if (*refs) return cmd_refinements(ctx);
  } catch (const ParseError& e) {
    err << "parse error at " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomainFailure;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomainFailure;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomainFailure;
  } catch (const std::logic_error& e) {
    // Internal cross-checks (for example L_dec against L'_dec) throw
    // logic_error; they signal disagreement, not bad input.
    err << "internal consistency check failed: " << e.what() << "\n";
    return kExitOracleMismatch;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomainFailure;
  }
  return kExitUsage;
}

}  // namespace fmlinv
