#pragma once

// CLI11 front end: subcommand wiring, report rendering, exit codes. Kept
// apart from driver.hpp so tests can exercise the full command surface
// in-process.

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "qlim/driver.hpp"

namespace qlim::cli {

inline int emit(std::ostream& out, const std::string& command, const Config& c,
                const std::vector<CheckReport>& reports) {
  detail::print_header(out, command, c);
  for (const auto& r : reports) out << render(r, c.mode) << "\n";
  return exit_code_for(reports);
}

/// Parses and runs one command line (without argv[0]). Returns the process
/// exit code: 0 all PASS, 1 any FAIL, 2 usage error, 3 INCONCLUSIVE only.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"symbolic verification engine for presented quantum-group towers"};
  app.require_subcommand(1);

  Config c;
  std::string report_mode = "text";
  std::string det_tuples = "all";
  double q_value = 1.0;

  auto add_common = [&](CLI::App* cmd, bool with_n = true) {
    cmd->add_option("--preset", c.preset, "suq | contraction | circle");
    if (with_n) {
      cmd->add_option("-n,-N", c.n, "level / tower depth");
    }
    cmd->add_option("-d", c.degree, "degree bound (completion / search)");
    cmd->add_option("-m", c.max_rules, "completion rule budget");
    cmd->add_option("--seed", c.seed, "RNG seed");
    cmd->add_option("--tol", c.tol, "accept tolerance");
    cmd->add_option("--tol-reject", c.tol_reject, "numeric refutation threshold");
    cmd->add_option("--report", report_mode, "text | records")
        ->check(CLI::IsMember({"text", "records"}));
    cmd->add_option("--det-tuples", det_tuples, "all | distinct")
        ->check(CLI::IsMember({"all", "distinct"}));
  };

  CLI::App* verify = app.add_subcommand("verify", "run the check suite for a preset");
  add_common(verify);
  verify->add_option("--samples", c.samples, "numeric sample count");

  CLI::App* nf = app.add_subcommand("nf", "normal form of an expression");
  add_common(nf);
  nf->add_option("--expr", c.expr, "expression")->required();

  CLI::App* rz = app.add_subcommand("reduce-zero", "sound ideal-membership check");
  add_common(rz);
  rz->add_option("--expr", c.expr, "expression")->required();

  CLI::App* complete = app.add_subcommand("complete", "bounded critical-pair completion");
  add_common(complete);

  CLI::App* diagram = app.add_subcommand("diagram", "theta/Delta commuting square");
  add_common(diagram);

  CLI::App* coassoc = app.add_subcommand("coassoc", "coassociativity on generators");
  add_common(coassoc);

  CLI::App* welldef = app.add_subcommand("welldef", "morphism well-definedness mod relations");
  add_common(welldef);
  welldef->add_option("--morphism", c.morphism, "delta | theta | pi")
      ->check(CLI::IsMember({"delta", "theta", "pi"}));

  CLI::App* density = app.add_subcommand("density", "finite-degree density certificates");
  add_common(density);
  density->add_option("--side", c.side, "left | right")
      ->check(CLI::IsMember({"left", "right"}));

  CLI::App* system = app.add_subcommand("system", "inverse-system operations");
  CLI::App* validate = system->add_subcommand("validate", "validate a tower");
  add_common(validate);
  validate->add_option("--sections", c.sections, "naive");

  CLI::App* hypotheses = app.add_subcommand("hypotheses", "Hypothesis (b) via iterated images");
  add_common(hypotheses);
  hypotheses->add_option("--sections", c.sections, "naive")->required();

  CLI::App* kappa = app.add_subcommand("kappa", "universal factorization triangle");
  add_common(kappa);
  kappa->add_option("--words", c.words, "number of seeded coherent words");
  kappa->add_option("--dims", c.dims, "comma-separated representation dimensions");

  CLI::App* numeric = app.add_subcommand("numeric", "representation residual sampling");
  add_common(numeric);
  numeric->add_option("--q", q_value, "deformation parameter in (0,1]");
  numeric->add_option("--samples", c.samples, "sample count");
  numeric->add_option("--dims", c.dims, "dimensions for contraction reps");

  std::vector<const char*> argv;
  argv.push_back("qlim");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  c.mode = report_mode == "records" ? ReportMode::records : ReportMode::text;
  c.det = det_tuples == "distinct" ? DetTuples::distinct : DetTuples::all;

  try {
    if (*verify) return emit(out, "verify", c, cmd_verify(c));
    if (*nf) return emit(out, "nf", c, cmd_nf(c));
    if (*rz) return emit(out, "reduce-zero", c, cmd_reduce_zero(c));
    if (*complete) return emit(out, "complete", c, cmd_complete(c));
    if (*diagram) return emit(out, "diagram", c, cmd_diagram(c));
    if (*coassoc) return emit(out, "coassoc", c, cmd_coassoc(c));
    if (*welldef) return emit(out, "welldef", c, cmd_welldef(c));
    if (*density) return emit(out, "density", c, cmd_density(c));
    if (*system) {
      if (*validate) return emit(out, "system validate", c, cmd_system_validate(c));
      err << "usage error: system requires a sub-command (validate)\n";
      return 2;
    }
    if (*hypotheses) return emit(out, "hypotheses", c, cmd_hypotheses(c));
    if (*kappa) return emit(out, "kappa", c, cmd_kappa(c));
    if (*numeric) return emit(out, "numeric", c, cmd_numeric(c, q_value));
  } catch (const ParseError& e) {
    err << "expression error: " << e.what() << "\n";
    return 2;
  } catch (const NameError& e) {
    err << "expression error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  err << "usage error: no command\n";
  return 2;
}

}  // namespace qlim::cli
