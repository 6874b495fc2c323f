#include "plumb/cli.hpp"

#include "CLI11.hpp"

#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"plumb-zhat: q-series invariants of negative definite plumbed 3-manifolds"};
  app.require_subcommand(1);

  plumb::JobSpec job;
  std::string format = "json";

  auto common = [&](CLI::App* sub) {
    sub->add_option("--input", job.input_path, "plumbing graph file");
    sub->add_option("--seifert", job.seifert, "Seifert data \"M(b; a1/b1, ...)\"");
    sub->add_option("--family", job.family, "what | param:w3=p/q,w4=p/q")->capture_default_str();
    sub->add_option("--truncate", job.truncate, "q-order bound N (rational)")->capture_default_str();
    sub->add_option("--t-root", job.t_root, "specialize t to a primitive 2j-th root of unity, given 2j");
    sub->add_option("--format", format, "json | text | csv")->capture_default_str();
  };

  auto* compute = app.add_subcommand("compute", "expand the invariant");
  common(compute);
  compute->add_option("--engine", job.engine, "lattice | closed")->capture_default_str();
  compute->add_option("--spinc", job.spinc, "all or a spin^c class index")->capture_default_str();
  compute->add_option("--mode", job.mode, "se | ae:p/q | sd (closed engine)");
  compute->add_option("--scale", job.scale, "native | final")->capture_default_str();

  auto* compare = app.add_subcommand("compare", "lattice sum against the closed form");
  common(compare);
  compare->add_option("--mode", job.mode, "se | ae:p/q | sd");

  auto* modularity = app.add_subcommand("modularity", "periodic coefficient data at a root of unity");
  common(modularity);
  modularity->add_option("--radial", job.radial, "radial limit of the C-series at e^{2 pi i p/r}");

  auto* neumann = app.add_subcommand("neumann-check", "invariance under random Neumann moves");
  common(neumann);
  neumann->add_option("--seed", job.seed, "random seed")->capture_default_str();
  neumann->add_option("--moves", job.moves, "number of moves")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : plumb::exit_code::parse_error;
  }

  plumb::CommandResult result;
  try {
    job.format = plumb::parse_format(format);
  } catch (const std::exception& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return plumb::exit_code::parse_error;
  }
  result = plumb::run_command(app.get_subcommands().front()->get_name(), job);
  (result.exit_code == plumb::exit_code::ok || result.exit_code == plumb::exit_code::mismatch ? std::cout : std::cerr)
      << result.output;
  return result.exit_code;
}
