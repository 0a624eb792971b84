// mgl: command-line front end for the frequency, cohomology, Chern and
// spectral computations.

#include "CLI11.hpp"
#include "harness.hpp"
#include "mgl/error.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

struct Flags {
  std::string config;
  std::string out = "out";
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> jobs;
};

int execute(const std::string& mode, const Flags& flags) {
  using mgl::harness::ConfigError;
  try {
    std::ifstream in(flags.config);
    if (!in) throw ConfigError({"cannot read config '" + flags.config + "'"});
    std::stringstream text;
    text << in.rdbuf();
    auto raw = mgl::harness::parse_config_text(text.str());
    if (flags.seed) raw["seed"] = *flags.seed;
    if (flags.jobs) raw["jobs"] = *flags.jobs;
    const auto config = mgl::harness::resolve_config(raw, mode);
    const auto outcome = mgl::harness::run(config, flags.out);
    for (const auto& m : outcome.messages) (outcome.exit_code ? std::cerr : std::cout) << m << '\n';
    for (const auto& a : outcome.artifacts) std::cout << "wrote " << (std::filesystem::path(flags.out) / a).string() << '\n';
    return outcome.exit_code;
  } catch (const ConfigError& e) {
    std::cerr << "invalid config:\n";
    for (const auto& d : e.diagnostics()) std::cerr << "  " << d << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"magnetic gap labelling toolkit"};
  app.set_version_flag("--version", mgl::harness::version());
  app.require_subcommand(1);

  Flags flags;
  std::string chosen;
  const std::vector<std::pair<std::string, std::string>> modes = {
      {"freq", "magnetic frequency group per level"},
      {"coh", "cohomology and cup-product containment per level"},
      {"chern", "Chern character integrality of an exterior element"},
      {"spectrum", "finite-volume spectra and detected gaps"},
      {"verify", "gap detection, labelling and frequency-group membership"},
      {"butterfly", "band edges over rational fluxes"},
  };
  for (const auto& [name, help] : modes) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", flags.config, "JSON run configuration")->required();
    sub->add_option("--out", flags.out, "output directory")->capture_default_str();
    sub->add_option("--seed", flags.seed, "overrides the config seed");
    sub->add_option("--jobs", flags.jobs, "worker threads")->check(CLI::PositiveNumber);
    sub->callback([&chosen, name = name] { chosen = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  return execute(chosen, flags);
}
