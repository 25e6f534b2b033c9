#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "pivroots/error.hpp"

namespace {

int exit_code_for(pivroots::ErrorCode c) {
  switch (c) {
    case pivroots::ErrorCode::InvalidArgument:
    case pivroots::ErrorCode::Domain:
    case pivroots::ErrorCode::CapExceeded:
      return pivroots::cli::kValidation;
    default:
      return pivroots::cli::kInvariant;
  }
}

void common_options(CLI::App* app, pivroots::cli::RunConfig& cfg) {
  app->add_option("-m", cfg.m, "first index");
  app->add_option("-n", cfg.n, "second index");
  app->add_option("--family", cfg.family, "hermite | okamoto, or HI | HII | HIII for qes");
  app->add_option("--precision-bits", cfg.precision_bits, "working precision in bits");
  app->add_option("--seed", cfg.seed, "seed for the root finder's start perturbation");
  app->add_option("--format", cfg.format, "csv | json");
  app->add_option("--out", cfg.out, "output file (poly) or directory (figure)");
  app->add_option("--digits", cfg.digits, "significant digits in exports (0 = shortest double)");
}

}  // namespace

int main(int argc, char** argv) {
  using pivroots::cli::RunConfig;
  RunConfig cfg;
  CLI::App app{"Rational Painleve IV solutions and generalised Hermite roots"};
  app.require_subcommand(1);

  CLI::App* poly = app.add_subcommand("poly", "print H_{m,n} or Q_{m,n}");
  common_options(poly, cfg);

  CLI::App* figure = app.add_subcommand("figure", "write root/lattice data for a figure");
  common_options(figure, cfg);
  figure->add_option("which", cfg.which, "fig1 | fig2-bulk | fig2-edge | fig3")->required();
  figure->add_option("--sigma", cfg.sigma, "bulk regime |k| <= sigma E");
  figure->add_option("--delta", cfg.delta, "edge regime exponent");
  figure->add_option("--s", cfg.s, "edge regime constant");
  figure->add_option("--radius-const", cfg.radius_const, "disc constant");
  figure->add_option("--j", cfg.j, "row index for single-point figures");

  CLI::App* verify = app.add_subcommand("verify", "run an invariant suite");
  common_options(verify, cfg);
  verify->add_option("which", cfg.which, "recursions | piv | backlund | realroots | qes | nolog | semicircle")->required();
  verify->add_option("--max-m", cfg.max_m, "largest m");
  verify->add_option("--max-n", cfg.max_n, "largest n");
  verify->add_option("--max-index", cfg.max_index, "largest index");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : pivroots::cli::kValidation;
  }

  try {
    pivroots::cli::validate(cfg);
    if (poly->parsed()) return pivroots::cli::cmd_poly(cfg);
    if (figure->parsed()) return pivroots::cli::cmd_figure(cfg);
    return pivroots::cli::cmd_verify(cfg);
  } catch (const pivroots::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return pivroots::cli::kInvariant;
  }
}
