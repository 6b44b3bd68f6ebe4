#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "arcdelta/config.hpp"
#include "arcdelta/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Bound states of planar delta interactions supported by open arcs"};
  app.name("arcdelta");

  std::string config_path;
  std::string out_dir;
  int workers = 0;
  bool quiet = false;
  app.add_option("config", config_path, "run configuration file")->required();
  app.add_option("--out", out_dir, "output directory (overrides the config)");
  app.add_option("--workers", workers, "worker thread cap (overrides the config)");
  app.add_flag("--quiet", quiet, "suppress progress output");

  CLI11_PARSE(app, argc, argv);

  std::ifstream in(config_path, std::ios::binary);
  if (!in) {
    std::cerr << "cannot read config file " << config_path << "\n";
    return 2;
  }
  std::ostringstream text;
  text << in.rdbuf();

  arcdelta::ParseResult parsed = arcdelta::parse_config(text.str());
  if (!parsed.config) {
    std::cerr << "invalid config (" << parsed.errors.size() << " error"
              << (parsed.errors.size() == 1 ? "" : "s") << "):\n";
    for (const std::string& e : parsed.errors) std::cerr << "  " << e << "\n";
    return 2;
  }

  arcdelta::RunOptions opt;
  if (!out_dir.empty()) opt.out_dir = out_dir;
  if (workers > 0) opt.workers = workers;
  opt.quiet = quiet;
  return arcdelta::run(*parsed.config, opt);
}
