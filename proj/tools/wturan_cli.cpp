#include <algorithm>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "wturan/blowup_optimizer.hpp"
#include "wturan/colored_graph.hpp"
#include "wturan/embedding_rules.hpp"
#include "wturan/errors.hpp"
#include "wturan/flag_sdp.hpp"
#include "wturan/lagrangian.hpp"
#include "wturan/rational.hpp"
#include "wturan/sdpa_io.hpp"
#include "wturan/weighted_graph.hpp"

namespace {

using namespace wturan;

const char* const kFormats =
    R"(File formats (0-indexed vertices, rationals as p/q, '#' comment lines allowed):
  matrix       "m <dim>", then <dim> rows of <dim> rationals (symmetric, zero diagonal)
  graph        "n <count>", then "<i> <j> <p>/<q>" per positive edge
  weighting    "<r> <p>/<q>" per clique order; step-constant between, constant beyond
  family       blocks of "pattern r=<r>" then "<i> <j> <p>/<q>"; omitted pairs threshold 0
  config       "t <t>", "p <p>", then "<i> <j> <p>/<q>" per usable cluster pair
  certificate  "lambda <p/q>", then per block "block <id> <dim>" and <dim> rational rows
  solution     certificate layout with decimal entries, as written by tools/solve_sdpa.py
  sdpa         sparse SDPA (.dat-s), integer entries, '"' or '*' comments

Cases: rho512, rho614, rho411, p6(<p>) with p >= 5. The flag subcommand also
accepts the toy problems mantel and mantel4.

Exit codes: 0 success, 1 rejected input or negative verdict, 2 usage error,
3 instance exceeds a capacity guard.)";

// The toy problems are reachable only here; the library cases need a CaseId.
DensityProblem problem_for(const std::string& name) {
  if (name == "mantel") return mantel_problem();
  if (name == "mantel4") return mantel_problem_n4();
  return case_problem(CaseId::parse(name));
}

std::string check_case(const std::string& name) {
  try {
    CaseId::parse(name);
  } catch (const std::exception& e) {
    return e.what();
  }
  return {};
}

std::string check_flag_case(const std::string& name) {
  if (name == "mantel" || name == "mantel4") return {};
  return check_case(name);
}

std::string check_alphabet(const std::string& csv) {
  try {
    parse_alphabet(csv);
  } catch (const std::exception& e) {
    return e.what();
  }
  return {};
}

void emit(const char* label, const Rat& value) {
  std::cout << label << ' ' << fmt_rat_approx(value) << '\n';
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw parse_error("cannot write '" + path + "'");
  return out;
}

int run_lagrangian(const std::string& path, int guard) {
  const SymMatrix a = parse_matrix_file(path);
  const LagrangianResult r = lagrangian_exact(a, guard);
  emit("value", r.value);
  std::cout << "support";
  for (int v : r.support) std::cout << ' ' << v;
  std::cout << '\n';
  std::cout << "x";
  for (const Rat& xi : r.x) std::cout << ' ' << fmt_rat_approx(xi);
  std::cout << '\n';
  std::cout << "kkt " << (r.kkt_verified ? "verified" : "not verified") << '\n';
  return 0;
}

int run_weight(const std::string& path, const std::string& weighting_path, const std::string& out,
               int guard) {
  const WeightedGraph g = parse_graph_file(path);
  const CliqueWeighting cw = weighting_path.empty() ? CliqueWeighting::turan(g.order())
                                                    : parse_weighting_file(weighting_path);
  const WeightedGraph h = assign_clique_weights(g, cw, guard);
  const Rat total = h.total_weight();
  if (out.empty()) {
    // Comment first so the output is itself a valid graph file.
    std::cout << "# total " << fmt_rat_approx(total) << '\n';
    write_graph(std::cout, h);
  } else {
    std::ofstream f = open_output(out);
    f << "# total " << fmt_rat_approx(total) << '\n';
    write_graph(f, h);
    emit("total", total);
  }
  return 0;
}

int run_dvalue(const std::string& path, const std::string& alphabet_csv, int tcap, int rmax,
               long budget) {
  const ForbiddenFamily family = parse_family_file(path, rmax);
  const Alphabet alphabet = parse_alphabet(alphabet_csv);
  const BlowupSolution best = optimize_dF(family, alphabet, tcap, budget);
  emit("d", best.density);
  std::cout << "t " << best.t << '\n';
  for (int j = 1; j < best.t; ++j)
    for (int i = 0; i < j; ++i)
      std::cout << "f " << i << ' ' << j << ' ' << fmt_rat_approx(best.spec.f.at(i, j)) << '\n';
  std::cout << "x";
  for (const Rat& xi : best.spec.x) std::cout << ' ' << fmt_rat_approx(xi);
  std::cout << '\n';
  std::cout << "bound " << (best.lower_bound_only ? "lower only (t capped below r_max)" : "exact")
            << '\n';
  return 0;
}

int run_embed(const std::string& path, int q) {
  const ClusterConfig config = parse_config_file(path);
  const EmbedResult r = max_embeddable(config);
  const bool forbidden = r.size >= q;
  std::cout << "verdict " << (forbidden ? "FORBIDDEN" : "NOT FORBIDDEN") << '\n';
  std::cout << "size " << r.size << " (target " << q << ")\n";
  std::cout << "order";
  for (int c : r.order) std::cout << ' ' << c;
  std::cout << '\n';
  std::cout << "contributions";
  for (int c : r.contributions) std::cout << ' ' << c;
  std::cout << '\n';
  return forbidden ? 0 : 1;
}

int run_tables(const std::string& name) {
  const CaseId c = CaseId::parse(name);
  const DiscretizationTable table = discretization(c);
  std::cout << "case " << c.str() << '\n';
  for (const TableRow& row : table.rows) {
    if (row.color == 1)
      std::cout << "color 1 density 0 rule " << row.rule << '\n';
    else
      std::cout << "color " << row.color << " range (" << fmt_rat(row.lower) << ", "
                << fmt_rat(row.upper) << "] rule " << row.rule << '\n';
  }
  if (table.cap) emit("cap", *table.cap);
  return 0;
}

int run_expand(const std::string& name) {
  const CaseId c = CaseId::parse(name);
  const std::vector<ColoredGraph> patterns = colored_forbidden_set(c);
  std::cout << "case " << c.str() << '\n';
  std::cout << "patterns " << patterns.size() << '\n';
  for (const ColoredGraph& g : patterns) std::cout << g.key() << '\n';
  return 0;
}

int run_flag_build(const std::string& name) {
  const DensityProblem problem = problem_for(name);
  const SdpInstance inst = build_sdp(problem);
  std::cout << "case " << name << '\n';
  std::cout << "palette " << problem.k << " window " << problem.N << '\n';
  std::cout << "forbidden " << problem.forbidden.size() << '\n';
  if (inst.infeasible) {
    std::cout << "infeasible (no admissible graphs; any lambda >= 0 is a bound)\n";
    return 0;
  }
  std::cout << "graphs " << inst.graphs.size() << '\n';
  std::cout << "blocks " << inst.blocks.size() << '\n';
  for (size_t b = 0; b < inst.blocks.size(); ++b)
    std::cout << "block " << b << " type " << inst.blocks[b].type.key() << " dim "
              << inst.blocks[b].flags.size() << '\n';
  emit("max objective", *std::max_element(inst.objective.begin(), inst.objective.end()));
  return 0;
}

int run_flag_export(const std::string& name, const std::string& out) {
  const SdpInstance inst = build_sdp(problem_for(name));
  const SdpaFile f = to_sdpa(inst, name);
  if (out.empty()) {
    write_sdpa(std::cout, f);
  } else {
    write_sdpa_file(out, f);
    std::cout << "wrote " << out << " (mdim " << f.mdim << ", entries " << f.entries.size()
              << ")\n";
  }
  return 0;
}

int run_flag_verify(const std::string& name, const std::string& cert_path) {
  const SdpInstance inst = build_sdp(problem_for(name));
  const Certificate cert = parse_certificate_file(cert_path);
  const VerifyResult r = verify_certificate(inst, cert);
  if (!r.ok) {
    std::cout << "certificate rejected: " << r.reason << '\n';
    return 1;
  }
  emit("lambda", cert.lambda);
  std::cout << "certificate accepted\n";
  return 0;
}

int run_flag_round(const std::string& name, const std::string& sol_path, long long limit,
                   const std::string& out) {
  const SdpInstance inst = build_sdp(problem_for(name));
  const auto numeric = parse_numeric_solution_file(sol_path);
  const Certificate cert = round_solution(inst, numeric, Int(static_cast<long>(limit)));
  if (out.empty()) {
    write_certificate(std::cout, cert);
  } else {
    std::ofstream f = open_output(out);
    write_certificate(f, cert);
    emit("lambda", cert.lambda);
    std::cout << "wrote " << out << '\n';
  }
  return 0;
}

int run_construct(const std::string& name, int n, const std::string& out) {
  const WeightedGraph g = named_construction(name, n);
  emit("density", g.total_weight());
  if (!out.empty()) {
    std::ofstream f = open_output(out);
    write_graph(f, g);
    std::cout << "wrote " << out << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact weighted Turan densities, cluster embedding tables, and flag SDP bounds."};
  app.footer(kFormats);
  app.require_subcommand(1);

  int threads = 0;
  app.add_option("--threads", threads, "worker count hint; output does not depend on it");

  std::string matrix_path;
  int lag_guard = 18;
  CLI::App* lag = app.add_subcommand("lagrangian", "maximize x^T A x over the simplex, exactly");
  lag->add_option("matrix", matrix_path, "matrix file")->required()->check(CLI::ExistingFile);
  lag->add_option("--guard", lag_guard, "matrix dimension guard")->check(CLI::PositiveNumber);

  std::string graph_path, weighting_path, weight_out;
  int weight_guard = 60;
  CLI::App* wgt = app.add_subcommand("weight", "reweight a graph's support by clique order");
  wgt->add_option("graph", graph_path, "graph file; only edge positivity is used")
      ->required()
      ->check(CLI::ExistingFile);
  CLI::Option* turan_opt = wgt->add_flag("--turan", "use the r/(2(r-1)) weighting (default)");
  wgt->add_option("--weighting", weighting_path, "weighting file")
      ->check(CLI::ExistingFile)
      ->excludes(turan_opt);
  wgt->add_option("-o,--output", weight_out, "write the reweighted graph here");
  wgt->add_option("--guard", weight_guard, "graph order guard")->check(CLI::PositiveNumber);

  std::string family_path, alphabet_csv;
  int tcap = 0, rmax = 0;
  long budget = 4000000;
  CLI::App* dv = app.add_subcommand("dvalue", "best blow-up density avoiding a family");
  dv->add_option("family", family_path, "forbidden family file")
      ->required()
      ->check(CLI::ExistingFile);
  dv->add_option("--alphabet", alphabet_csv, "candidate weights, e.g. 0,1/5,1")
      ->required()
      ->check(check_alphabet, "", "ALPHABET");
  dv->add_option("--tcap", tcap, "largest blow-up order to search")
      ->required()
      ->check(CLI::PositiveNumber);
  dv->add_option("--rmax", rmax, "order bound when no all-zero template supplies one")
      ->check(CLI::NonNegativeNumber);
  dv->add_option("--budget", budget, "search node budget")->check(CLI::PositiveNumber);

  std::string config_path;
  int embed_q = 0;
  CLI::App* emb = app.add_subcommand("embed", "largest clique a cluster configuration guarantees");
  emb->add_option("config", config_path, "cluster configuration file")
      ->required()
      ->check(CLI::ExistingFile);
  emb->add_option("-q,--target", embed_q, "clique size to compare against")
      ->required()
      ->check(CLI::PositiveNumber);

  std::string tables_case;
  CLI::App* tab = app.add_subcommand("tables", "print a case's density discretization");
  tab->add_option("--case", tables_case, "case name")->required()->check(check_case, "", "CASE");

  std::string expand_case;
  CLI::App* exp = app.add_subcommand("expand", "print a case's colored forbidden patterns");
  exp->add_option("--case", expand_case, "case name")->required()->check(check_case, "", "CASE");

  CLI::App* flag = app.add_subcommand("flag", "flag SDP pipeline: build, export, round, verify");
  flag->require_subcommand(1);
  std::string fb_case, fe_case, fv_case, fr_case;
  std::string fe_out, fv_cert, fr_sol, fr_out;
  long long fr_limit = 0;
  CLI::App* fb = flag->add_subcommand("build", "build the instance and print its shape");
  fb->add_option("--case", fb_case, "case name")->required()->check(check_flag_case, "", "CASE");
  CLI::App* fe = flag->add_subcommand("export", "write the instance in sparse SDPA format");
  fe->add_option("--case", fe_case, "case name")->required()->check(check_flag_case, "", "CASE");
  fe->add_option("-o,--output", fe_out, "output path (default stdout)");
  CLI::App* fv = flag->add_subcommand("verify", "check a rational certificate exactly");
  fv->add_option("--case", fv_case, "case name")->required()->check(check_flag_case, "", "CASE");
  fv->add_option("--certificate", fv_cert, "certificate file")
      ->required()
      ->check(CLI::ExistingFile);
  CLI::App* fr = flag->add_subcommand("round", "rationalize a numeric solver solution");
  fr->add_option("--case", fr_case, "case name")->required()->check(check_flag_case, "", "CASE");
  fr->add_option("--solution", fr_sol, "numeric solution file")
      ->required()
      ->check(CLI::ExistingFile);
  fr->add_option("--limit", fr_limit, "denominator limit for entry reconstruction")
      ->required()
      ->check(CLI::PositiveNumber);
  fr->add_option("-o,--output", fr_out, "certificate path (default stdout)");

  std::string construct_name, construct_out;
  int construct_n = 0;
  CLI::App* con = app.add_subcommand("construct", "realize a named extremal construction");
  con->add_option("name", construct_name, "rho512, rho614, rho411, conj_ptr(p,t,r), ...")
      ->required();
  con->add_option("-n,--order", construct_n, "number of vertices")
      ->required()
      ->check(CLI::PositiveNumber);
  con->add_option("-o,--output", construct_out, "write the graph here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(lag)) return run_lagrangian(matrix_path, lag_guard);
    if (app.got_subcommand(wgt)) return run_weight(graph_path, weighting_path, weight_out, weight_guard);
    if (app.got_subcommand(dv)) return run_dvalue(family_path, alphabet_csv, tcap, rmax, budget);
    if (app.got_subcommand(emb)) return run_embed(config_path, embed_q);
    if (app.got_subcommand(tab)) return run_tables(tables_case);
    if (app.got_subcommand(exp)) return run_expand(expand_case);
    if (app.got_subcommand(flag)) {
      if (flag->got_subcommand(fb)) return run_flag_build(fb_case);
      if (flag->got_subcommand(fe)) return run_flag_export(fe_case, fe_out);
      if (flag->got_subcommand(fv)) return run_flag_verify(fv_case, fv_cert);
      if (flag->got_subcommand(fr)) return run_flag_round(fr_case, fr_sol, fr_limit, fr_out);
    }
    if (app.got_subcommand(con)) return run_construct(construct_name, construct_n, construct_out);
  } catch (const capacity_error& e) {
    std::cerr << "capacity: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;  // unreachable with require_subcommand, but keep the usage code
}
