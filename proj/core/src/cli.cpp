#include "hp/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hp/asymptotics.hpp"
#include "hp/config.hpp"
#include "hp/errors.hpp"
#include "hp/report.hpp"
#include "hp/riemann.hpp"

namespace hp {

namespace {

// Options shared by every subcommand plus the union of specific ones;
// each subcommand only registers the flags it understands.
struct cli_options {
  std::string config_path;
  std::string out_path;
  std::string json_path;
  std::string plot_path;
  std::vector<long> index;
  long bits = 0;
  long jobs = 0;
  long budget = 0;
  int pole_sheet = 0;
  int level = 0;
  long from = 0, to = 0;
};

void write_artifact(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw validation_error("cannot write output file: " + path);
  out << content;
}

std::string index_str(const std::vector<long>& n) {
  std::ostringstream os;
  os << '(';
  for (size_t i = 0; i < n.size(); ++i) {
    if (i) os << ',';
    os << n[i];
  }
  os << ')';
  return os.str();
}

run_config make_config(const cli_options& opt) {
  long override_bits = opt.bits > 0 ? opt.bits : env_precision_bits();
  run_config cfg = load_config(opt.config_path, override_bits);
  if (opt.budget > 0) cfg.degree_budget = opt.budget;
  if (!opt.index.empty()) cfg.index = opt.index;
  if (opt.pole_sheet > 0) cfg.pole_sheet = opt.pole_sheet;
  if (opt.level > 0) cfg.level = opt.level;
  if (opt.from > 0) cfg.ladder_from = opt.from;
  if (opt.to > 0) cfg.ladder_to = opt.to;
  if (opt.jobs > 0) cfg.jobs = opt.jobs;
  if (cfg.jobs < 1 || cfg.jobs > 64)
    throw validation_error("jobs must be between 1 and 64");
  return cfg;
}

report_header make_header(const run_config& cfg) {
  report_header hdr;
  hdr.config_hash = fnv1a_hex(cfg.raw);
  hdr.precision_bits = cfg.policy.bits;
  return hdr;
}

void push_table_trace(report_header& hdr, const moment_table& table) {
  std::ostringstream os;
  os << "moments: degree " << table.degree_budget << ", level "
     << table.report.level << ", " << table.report.pairs.size()
     << " chain measures, max err " << table.report.max_err.str(6);
  hdr.trace.push_back(os.str());
}

multi_index config_index(const run_config& cfg, int m) {
  if (cfg.index.empty())
    throw validation_error("an index is required (config \"index\" or --index)");
  multi_index n{cfg.index};
  validate(n);
  if (n.m() != m)
    throw validation_error("index has " + std::to_string(n.m()) +
                           " components but the chain has " +
                           std::to_string(m));
  return n;
}

std::vector<multi_index> config_ladder(const run_config& cfg, int m,
                                       long default_from, long default_to) {
  if (!cfg.ladder.empty()) {
    std::vector<multi_index> out;
    for (const auto& e : cfg.ladder) {
      multi_index n{e};
      validate(n);
      if (n.m() != m)
        throw validation_error("ladder entry " + index_str(e) +
                               " does not match the chain length");
      out.push_back(std::move(n));
    }
    return out;
  }
  long from = cfg.ladder_from > 0 ? cfg.ladder_from : default_from;
  long to = cfg.ladder_to > 0 ? cfg.ladder_to : default_to;
  return diagonal_ladder(m, from, to);
}

long ladder_budget(const run_config& cfg,
                   const std::vector<multi_index>& ladder, bool bumps) {
  if (cfg.degree_budget > 0) return cfg.degree_budget;
  long best = 0;
  for (const auto& n : ladder) {
    long need = needed_budget(n) + (bumps ? 2 : 0);
    best = std::max(best, need);
  }
  return best;
}

std::vector<complex> config_probes(const run_config& cfg) {
  if (!cfg.probes.empty()) return cfg.probes;
  return default_probes(cfg.gen);
}

void emit_experiment(const cli_options& opt, const report_header& hdr,
                     const experiment_report& rep) {
  write_artifact(opt.out_path, to_csv(hdr, rep));
  if (!opt.json_path.empty()) write_artifact(opt.json_path, to_json(hdr, rep));
  if (!opt.plot_path.empty()) write_artifact(opt.plot_path, plot_script(rep));
}

int cmd_moments(const cli_options& opt) {
  run_config cfg = make_config(opt);
  if (cfg.degree_budget <= 0)
    throw validation_error("moments needs a degree budget (config or --budget)");
  precision_guard guard(cfg.policy.bits + 32);
  moment_table table =
      nikishin_moments(cfg.gen, cfg.degree_budget, cfg.policy);
  report_header hdr = make_header(cfg);
  push_table_trace(hdr, table);
  write_artifact(opt.out_path, to_json(hdr, table));
  return 0;
}

int cmd_solve(const cli_options& opt) {
  run_config cfg = make_config(opt);
  precision_guard guard(cfg.policy.bits + 32);
  multi_index n = config_index(cfg, cfg.gen.m());
  long budget =
      cfg.degree_budget > 0 ? cfg.degree_budget : needed_budget(n);
  system_context ctx(cfg.gen, budget, cfg.policy);
  hp_solution sol = solve_hp(ctx, n);
  residual_report resid = residual_orders(sol, ctx.table());
  report_header hdr = make_header(cfg);
  push_table_trace(hdr, ctx.table());
  std::ostringstream os;
  os << "solve: index " << index_str(n.n) << " at " << sol.bits
     << " bits, condition " << sol.condition_estimate.str(6);
  hdr.trace.push_back(os.str());
  write_artifact(opt.out_path, to_json(hdr, sol, &resid));
  return 0;
}

int cmd_zeros(const cli_options& opt) {
  run_config cfg = make_config(opt);
  precision_guard guard(cfg.policy.bits + 32);
  int m = cfg.gen.m();
  multi_index n = config_index(cfg, m);
  int level = cfg.level > 0 ? cfg.level : m;
  if (level < 1 || level > m)
    throw validation_error("level must be between 1 and the chain length");
  long budget =
      cfg.degree_budget > 0 ? cfg.degree_budget : needed_budget(n);
  system_context ctx(cfg.gen, budget, cfg.policy);
  hp_solution sol = solve_hp(ctx, n);
  monic_from_roots mf = form_zeros(sol, ctx.table(), level);
  report_header hdr = make_header(cfg);
  push_table_trace(hdr, ctx.table());
  std::ostringstream os;
  os << "zeros: level " << level << ", " << mf.zeros.size()
     << " certified roots";
  hdr.trace.push_back(os.str());
  write_artifact(opt.out_path, to_json(hdr, mf, n.n, level));
  return 0;
}

int cmd_surface(const cli_options& opt) {
  run_config cfg = make_config(opt);
  precision_guard guard(cfg.policy.bits + 32);
  require_disjoint(cfg.gen);
  surface_spec spec;
  for (const auto& ms : cfg.gen.sigma) spec.slits.push_back(ms.support);
  spec.l = cfg.pole_sheet;
  surface_map map = build_surface_map(spec, cfg.policy);
  bvp_report checks = bvp_residual(map);
  report_header hdr = make_header(cfg);
  std::ostringstream os;
  os << "surface: " << map.m << " slits, pole sheet " << map.l
     << ", boundary quotient dev " << checks.cond3_dev.str(6);
  hdr.trace.push_back(os.str());
  write_artifact(opt.out_path, to_json(hdr, map, checks));
  return 0;
}

int cmd_converge(const cli_options& opt) {
  run_config cfg = make_config(opt);
  precision_guard guard(cfg.policy.bits + 32);
  int m = cfg.gen.m();
  std::vector<multi_index> ladder = config_ladder(cfg, m, 1, 6);
  std::vector<complex> probes = config_probes(cfg);
  system_context ctx(cfg.gen, ladder_budget(cfg, ladder, false), cfg.policy);
  experiment_report rep =
      run_markov_convergence(ctx, ladder, probes, cfg.jobs);
  report_header hdr = make_header(cfg);
  push_table_trace(hdr, ctx.table());
  hdr.trace.push_back("converge: " + std::to_string(rep.rows.size()) +
                      " rows across " + std::to_string(rep.ladder.size()) +
                      " ladder entries");
  emit_experiment(opt, hdr, rep);
  return 0;
}

int cmd_ratio(const cli_options& opt) {
  run_config cfg = make_config(opt);
  precision_guard guard(cfg.policy.bits + 32);
  int m = cfg.gen.m();
  std::vector<multi_index> ladder = config_ladder(cfg, m, 1, 6);
  std::vector<complex> probes = config_probes(cfg);
  system_context ctx(cfg.gen, ladder_budget(cfg, ladder, true), cfg.policy);
  experiment_report rep =
      run_ratio_asymptotics(ctx, ladder, cfg.pole_sheet, probes, cfg.jobs);
  report_header hdr = make_header(cfg);
  push_table_trace(hdr, ctx.table());
  hdr.trace.push_back("ratio: raised component " +
                      std::to_string(cfg.pole_sheet) + ", " +
                      std::to_string(rep.rows.size()) + " rows");
  emit_experiment(opt, hdr, rep);
  return 0;
}

int cmd_kappa(const cli_options& opt) {
  run_config cfg = make_config(opt);
  precision_guard guard(cfg.policy.bits + 32);
  int m = cfg.gen.m();
  std::vector<multi_index> ladder = config_ladder(cfg, m, 1, 6);
  std::vector<complex> probes = config_probes(cfg);
  system_context ctx(cfg.gen, ladder_budget(cfg, ladder, true), cfg.policy);
  experiment_report rep =
      run_kappa(ctx, ladder, cfg.pole_sheet, probes, cfg.jobs);
  report_header hdr = make_header(cfg);
  push_table_trace(hdr, ctx.table());
  hdr.trace.push_back("kappa: raised component " +
                      std::to_string(cfg.pole_sheet) + ", " +
                      std::to_string(rep.rows.size()) + " rows");
  emit_experiment(opt, hdr, rep);
  return 0;
}

int cmd_report(const cli_options& opt) {
  run_config cfg = make_config(opt);
  precision_guard guard(cfg.policy.bits + 32);
  int m = cfg.gen.m();
  std::vector<multi_index> ladder = config_ladder(cfg, m, 1, 5);
  system_context ctx(cfg.gen, ladder_budget(cfg, ladder, true), cfg.policy);
  experiment_report rep = zero_structure_report(ctx, ladder);
  report_header hdr = make_header(cfg);
  push_table_trace(hdr, ctx.table());
  hdr.trace.push_back("report: zero structure, " +
                      std::to_string(rep.rows.size()) + " rows");
  emit_experiment(opt, hdr, rep);
  return 0;
}

}  // namespace

int cli_main(int argc, char** argv) {
  CLI::App app{"Hermite-Pade workbench for Nikishin chains"};
  app.require_subcommand(1);

  cli_options opt;
  int (*handler)(const cli_options&) = nullptr;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config_path, "JSON config file")
        ->required();
    sub->add_option("--out", opt.out_path,
                    "output path (stdout when omitted)");
    sub->add_option("--bits", opt.bits,
                    "working precision override (beats HP_PRECISION_BITS)");
    sub->add_option("--jobs", opt.jobs, "bounded worker parallelism");
  };
  auto experiment_flags = [&](CLI::App* sub) {
    sub->add_option("--json", opt.json_path, "also write a JSON summary");
    sub->add_option("--plot-script", opt.plot_path,
                    "also write gnuplot commands");
    sub->add_option("--from", opt.from, "diagonal ladder start");
    sub->add_option("--to", opt.to, "diagonal ladder end");
  };

  CLI::App* moments =
      app.add_subcommand("moments", "moment table of every chain measure");
  common(moments);
  moments->add_option("--budget", opt.budget, "highest moment degree");
  moments->callback([&] { handler = cmd_moments; });

  CLI::App* solve =
      app.add_subcommand("solve", "interpolation problem at one index");
  common(solve);
  solve->add_option("--index", opt.index, "multi-index components")
      ->delimiter(',');
  solve->add_option("--budget", opt.budget, "table degree budget");
  solve->callback([&] { handler = cmd_solve; });

  CLI::App* zeros =
      app.add_subcommand("zeros", "certified zeros of one linear form");
  common(zeros);
  zeros->add_option("--index", opt.index, "multi-index components")
      ->delimiter(',');
  zeros->add_option("--level", opt.level, "which form (1..m)");
  zeros->add_option("--budget", opt.budget, "table degree budget");
  zeros->callback([&] { handler = cmd_zeros; });

  CLI::App* surface = app.add_subcommand(
      "surface", "rational parametrization of the slit geometry");
  common(surface);
  surface->add_option("--pole-sheet", opt.pole_sheet,
                      "sheet carrying the finite pole (1..m)");
  surface->callback([&] { handler = cmd_surface; });

  CLI::App* converge = app.add_subcommand(
      "converge", "coefficient ratios against the chain transforms");
  common(converge);
  experiment_flags(converge);
  converge->callback([&] { handler = cmd_converge; });

  CLI::App* ratio = app.add_subcommand(
      "ratio", "index-increment ratios against the surface branches");
  common(ratio);
  experiment_flags(ratio);
  ratio->add_option("--pole-sheet", opt.pole_sheet, "raised component (1..m)");
  ratio->callback([&] { handler = cmd_ratio; });

  CLI::App* kappa = app.add_subcommand(
      "kappa", "normalizing constants against the surface limits");
  common(kappa);
  experiment_flags(kappa);
  kappa->add_option("--pole-sheet", opt.pole_sheet, "raised component (1..m)");
  kappa->callback([&] { handler = cmd_kappa; });

  CLI::App* report =
      app.add_subcommand("report", "zero structure across a ladder");
  common(report);
  experiment_flags(report);
  report->callback([&] { handler = cmd_report; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    app.exit(e);
    return 2;
  }

  try {
    return handler(opt);
  } catch (const validation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const numerical_error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace hp
