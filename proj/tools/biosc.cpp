#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "biosc/commands.hpp"

namespace {

struct CommonOpts {
  std::string config_path;
  std::string preset;
  std::string format = "csv";
  std::string out_path;
  int jobs = 1;
  double tolerance_scale = 1.0;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--config", o.config_path, "INI config file");
  cmd->add_option("--preset", o.preset, "built-in preset name (fig1a..fig1f, fig3, fig4, fig5a, fig5b)");
  cmd->add_option("--format", o.format, "output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", o.out_path, "output file (default: stdout)");
  cmd->add_option("--jobs", o.jobs, "worker count for grid points and suite cases")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--tolerance-scale", o.tolerance_scale, "multiply verification tolerances")
      ->check(CLI::PositiveNumber);
}

biosc::RunConfig resolve_config(const CommonOpts& o) {
  biosc::RunConfig cfg;
  if (!o.config_path.empty() && !o.preset.empty())
    throw biosc::config_error("--config and --preset are mutually exclusive");
  if (!o.config_path.empty()) cfg = biosc::load_config_file(o.config_path);
  else if (!o.preset.empty()) cfg = biosc::load_preset(o.preset);
  cfg.output_format = o.format == "json" ? biosc::OutputFormat::json : biosc::OutputFormat::csv;
  if (!o.out_path.empty()) cfg.output_path = o.out_path;
  return cfg;
}

int with_output(const biosc::RunConfig& cfg, const std::function<int(std::ostream&)>& run) {
  if (cfg.output_path.empty()) return run(std::cout);
  std::ofstream out(cfg.output_path);
  if (!out) throw biosc::config_error(cfg.output_path + ": cannot open for writing");
  return run(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bi-orthogonal non-Hermitian oscillator laboratory"};
  app.require_subcommand(1);

  CommonOpts opt_pot, opt_ver, opt_coh, opt_lim;
  std::string suite = "all";
  std::string family = "natural";
  double r_max = 6.0;
  int r_points = 61;
  std::vector<double> gammas{2.0, 20.0, 1e6};

  CLI::App* pot = app.add_subcommand("potential", "emit x, Re V, Im V, x^2 columns");
  add_common(pot, opt_pot);

  CLI::App* ver = app.add_subcommand("verify", "run identity suites, emit a JSON residual report");
  add_common(ver, opt_ver);
  ver->add_option("--suite", suite, "biorthogonality|algebra|measures|bargmann|limits|all");

  CLI::App* coh = app.add_subcommand("coherent", "uncertainty products against r = |z|");
  add_common(coh, opt_coh);
  coh->add_option("--family", family, "natural or distorted");
  coh->add_option("--r-max", r_max, "radial grid end")->check(CLI::PositiveNumber);
  coh->add_option("--r-points", r_points, "radial grid size")->check(CLI::PositiveNumber);

  CLI::App* lim = app.add_subcommand("limits", "oscillator-limit deviations per gamma");
  add_common(lim, opt_lim);
  lim->add_option("--gamma", gammas, "gamma values")->delimiter(',');

  CLI11_PARSE(app, argc, argv);

  try {
    if (pot->parsed()) {
      const biosc::RunConfig cfg = resolve_config(opt_pot);
      return with_output(cfg, [&](std::ostream& o) {
        return biosc::cmd_potential(cfg, o, opt_pot.jobs);
      });
    }
    if (ver->parsed()) {
      const biosc::RunConfig cfg = resolve_config(opt_ver);
      return with_output(cfg, [&](std::ostream& o) {
        return biosc::cmd_verify(cfg, suite, opt_ver.tolerance_scale, o, opt_ver.jobs);
      });
    }
    if (coh->parsed()) {
      const biosc::RunConfig cfg = resolve_config(opt_coh);
      return with_output(cfg, [&](std::ostream& o) {
        return biosc::cmd_coherent(cfg, family, o, r_max, r_points);
      });
    }
    if (lim->parsed()) {
      const biosc::RunConfig cfg = resolve_config(opt_lim);
      return with_output(cfg, [&](std::ostream& o) {
        return biosc::cmd_limits(cfg, gammas, o);
      });
    }
  } catch (const biosc::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
