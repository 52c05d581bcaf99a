#include <iostream>

#include "CLI11.hpp"
#include "eohom/experiments.hpp"

int main(int argc, char** argv) {
  eohom::RunConfig cfg;
  CLI::App app{"Two-photon simulator for an electro-optic HOM chip"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  std::string layout, dispersion, filter, preset, pc0 = "both", format = "csv+svg";
  int samples = 0;
  double halfwidth = 0.0;
  app.add_option("--layout", layout, "chip layout file");
  app.add_option("--dispersion", dispersion, "Sellmeier coefficient file");
  app.add_option("--out", cfg.out_dir, "output directory")->capture_default_str();
  app.add_option("--grid-samples", samples, "spectral grid samples")->check(CLI::Range(16, 1 << 20));
  app.add_option("--grid-halfwidth-nm", halfwidth, "spectral grid half-width (nm)")->check(CLI::PositiveNumber);
  app.add_option("--filter", filter, "detection filter: none, rect:W, lorentz:W");
  app.add_option("--preset", preset, "imperfection preset")->check(CLI::IsMember({"ideal", "paper"}));
  app.add_option("--pc0", pc0, "PC0 branches to report")->check(CLI::IsMember({"on", "off", "both"}));
  app.add_option("--format", format, "output files")->check(CLI::IsMember({"csv", "csv+svg"}));
  app.add_option("--seed", cfg.seed, "reserved, unused");

  app.add_subcommand("delays", "delay of every switch setting");
  app.add_subcommand("hom-scan", "normalized coincidences over all switch settings");
  app.add_subcommand("dip", "coincidence probability vs continuous delay");
  app.add_subcommand("phasematch", "SHG/PDC spectra, PC transmission, temperature tuning");
  app.add_subcommand("rates", "loss budget, Klyshko efficiency, expected rates");

  CLI11_PARSE(app, argc, argv);

  try {
    cfg.command = app.get_subcommands().front()->get_name();
    if (!layout.empty()) cfg.layout_path = layout;
    if (!dispersion.empty()) cfg.dispersion_path = dispersion;
    if (samples) cfg.grid_samples = samples;
    if (halfwidth > 0.0) cfg.grid_halfwidth_nm = halfwidth;
    if (!filter.empty()) cfg.filter = filter;
    if (!preset.empty()) cfg.preset = eohom::parse_preset(preset);
    cfg.pc0 = eohom::parse_pc0_selection(pc0);
    cfg.svg = format == "csv+svg";

    const auto result = eohom::run_command(cfg);
    std::cout << result.summary;
    for (const auto& f : result.files) std::cout << "wrote " << f << '\n';
  } catch (const std::exception& e) {
    std::cerr << "eohom: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
