#include <iostream>

#include <CLI11.hpp>

#include "cubecat/cli.hpp"

namespace {

void add_input_flags(CLI::App* cmd, cubecat::RunConfig& cfg) {
  cmd->add_option("--pd", cfg.pd, "PD code, e.g. \"X[1,4,2,5];X[3,6,4,1];X[5,2,6,3]\"");
  cmd->add_option("--file", cfg.file, "a .pd file or a directory of .pd files");
  cmd->add_option("--orient", cfg.orient, "strict (default) or numbering")->check(CLI::IsMember({"strict", "numbering"}));
  cmd->add_option("--outer-face", cfg.outer_face, "face of the planar map glued to the unbounded region");
}

}  // namespace

int main(int argc, char** argv) {
  cubecat::RunConfig cfg;
  cfg.jobs = cubecat::default_jobs();

  CLI::App app{"Khovanov, nested Khovanov and odd Khovanov homology of link diagrams"};
  app.require_subcommand(1);
  app.add_option("--output,-o", cfg.output, "write JSON here instead of stdout");
  app.add_option("--jobs,-j", cfg.jobs, "worker threads (default: CUBECAT_JOBS or 1)");

  auto* compute = app.add_subcommand("compute", "homology table of a diagram");
  add_input_flags(compute, cfg);
  compute->add_option("--theory", cfg.theory, "kh, nested or odd");
  compute->add_option("--coeff", cfg.coefficients, "Z, Q or F<p>");
  compute->add_flag("--dump-cube", cfg.dump_cube, "include the signed cube of resolutions");
  compute->add_flag("--dump-states", cfg.dump_states, "include every resolved state");
  compute->add_flag("--table", cfg.table, "pretty table on stderr");

  auto* euler = app.add_subcommand("euler", "graded Euler characteristic against the Kauffman bracket state sum");
  add_input_flags(euler, cfg);
  euler->add_option("--theory", cfg.theory, "kh, nested, odd or all");

  auto* verify = app.add_subcommand("verify", "certificates");
  add_input_flags(verify, cfg);
  verify->add_option("--theorem", cfg.theorem, "1, 2, mod2, signs or outerface")->required();
  verify->add_option("--theory", cfg.theory, "theory for --theorem signs (kh, nested, odd or all)");
  verify->add_option("--coeff", cfg.coefficients, "coefficients for --theorem outerface");
  verify->add_option("--seed", cfg.seed, "seed for random sign assignments");
  verify->add_option("--trials", cfg.trials, "random pairs per diagram and theory");

  auto* relations = app.add_subcommand("verify-relations", "audit the local relations of a Frobenius system");
  relations->add_option("--theory", cfg.theory, "kh, nested, odd or all");

  auto* classify = app.add_subcommand("classify-signs", "enumerate the sign-decorated systems");
  add_input_flags(classify, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cubecat::kExitInvalid;
  }
  cfg.subcommand = app.get_subcommands().front()->get_name();
  return cubecat::run(cfg, std::cout, std::cerr);
}
