// fthresh: F-thresholds, test ideals and jumping numbers of hypersurfaces over
// prime fields.

#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "fthresh/cli/commands.hpp"
#include "fthresh/cli/sweep.hpp"

namespace {

std::vector<std::string> split_vars(const std::string &text) {
  std::vector<std::string> vars;
  std::string current;
  for (char c : text) {
    if (c == ',' || c == ' ') {
      if (!current.empty())
        vars.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  if (!current.empty())
    vars.push_back(current);
  return vars;
}

} // namespace

int main(int argc, char **argv) {
  using namespace fthresh::cli;

  CLI::App app{"F-thresholds, test ideals and jumping numbers over F_p", "fthresh"};
  app.require_subcommand(1);
  app.set_version_flag("--version", tool_version);

  JobSpec job;
  std::string vars_text;
  bool as_json = false;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());

  app.add_option("-p,--prime", job.prime, "Characteristic p (prime, < 2^31)");
  app.add_option("-v,--vars", vars_text, "Comma-separated variable names, e.g. x,y");
  app.add_option("-f", job.f, "Polynomial f, e.g. \"x^2+y^3\"");
  app.add_option("-J", job.ideals,
                 "Ideal as comma-separated generators; @m = maximal ideal. "
                 "Repeat for a family (verify)");
  app.add_flag("--json", as_json, "Emit the result record as JSON");
  app.add_option("--jobs", jobs, "Worker threads for sweep")->check(CLI::PositiveNumber);
  app.add_option("--max-e", job.max_e, "Highest Frobenius level (default 6)");
  app.add_option("--degree-budget", job.degree_budget,
                 "Maximum number of terms in any intermediate polynomial");
  app.fallthrough();

  auto *nu = app.add_subcommand("nu", "nu_e^J(f) = max{n : f^n not in J^[p^e]}");
  nu->add_option("-e", job.e, "Frobenius level e")->required();

  app.add_subcommand("threshold", "Nested intervals for c^J(f), levels 1..max-e");
  app.add_subcommand("fpt", "F-pure threshold c^m(f) with a heuristic exact guess");
  app.add_subcommand("fedder", "Fedder F-purity test at the origin");

  auto *ti = app.add_subcommand("testideal", "Test ideal tau(f^t)");
  std::string t_text;
  ti->add_option("-t", t_text, "Parameter t as a/b")->required();
  ti->add_option("--window", job.window, "Equal chain members required (default 2)");

  std::string t_max_text;
  unsigned grid = 0;
  auto *jumps = app.add_subcommand("jumps", "Jumping numbers of tau(f^t) on a p^-E grid");
  jumps->add_option("--t-max", t_max_text, "Largest t on the grid (a/b)")->required();
  jumps->add_option("-E", grid, "Grid level E (step 1/p^E)")->required();

  auto *verify = app.add_subcommand(
      "verify", "Check that thresholds and jumping numbers correspond");
  verify->add_option("--t-max", t_max_text, "Largest t on the grid (a/b)")->required();
  verify->add_option("-E", grid, "Grid level E")->required();
  verify->add_flag("--jump-ideals", job.jump_ideals,
                   "Add tau(f^alpha) at every detected jump to the family");
  bool no_retry = false;
  verify->add_flag("--no-retry", no_retry, "Do not retry a failed check at E+1");

  std::string config_path;
  auto *sweep = app.add_subcommand("sweep", "Batch nu/interval computations from a config file");
  sweep->add_option("config", config_path, "Sweep configuration file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return exit_parse;
  }

  try {
    if (sweep->parsed()) {
      auto cfg = load_sweep_config(config_path);
      if (app.count("--jobs") == 0 && cfg.jobs)
        jobs = *cfg.jobs;
      auto summary = run_sweep(cfg, jobs);
      if (as_json) {
        std::cout << json{{"schema", schema_id},
                          {"kind", "sweep"},
                          {"jobs", summary.jobs},
                          {"skipped", summary.skipped},
                          {"records", summary.records},
                          {"errors", summary.errors},
                          {"output", cfg.output.string()}}
                         .dump()
                  << '\n';
      } else {
        std::cout << "sweep: " << summary.jobs << " jobs, " << summary.records
                  << " new records, " << summary.errors << " errors, "
                  << summary.skipped << " skipped -> " << cfg.output.string()
                  << '\n';
      }
      return summary.exit_code();
    }

    job.command = app.get_subcommands().front()->get_name();
    job.vars = split_vars(vars_text);
    if (ti->parsed())
      job.t = t_text;
    if (jumps->parsed() || verify->parsed()) {
      job.t_max = t_max_text;
      job.grid_level = grid;
    }
    job.retry = !no_retry;

    auto record = run_command(job);
    if (as_json)
      std::cout << record.to_json().dump() << '\n';
    else
      std::cout << render_text(record);
    return exit_ok;
  } catch (const fthresh::ParseError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_parse;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}
