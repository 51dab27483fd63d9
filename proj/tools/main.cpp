#include "critsense/runner.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>

namespace {

int fail(int status, const std::string& kind, const std::string& message) {
  critsense::Json err{{"status", "error"}, {"kind", kind}, {"message", message}};
  std::cerr << err.dump() << '\n';
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace critsense;
  CLI::App app{"critsense: critical quantum sensing experiments"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  app.add_option("--config", config_path, "JSON run config")->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "output directory (overrides config)");
  app.add_option("--seed", seed, "random seed (overrides config)");
  app.add_option("--threads", threads, "worker threads (overrides config)")->check(CLI::PositiveNumber);

  for (const auto& name : experiment_names()) app.add_subcommand(name, "run the " + name + " experiment");
  app.add_subcommand("list-presets", "print the named model presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  const auto* sub = app.get_subcommands().front();
  if (sub->get_name() == "list-presets") {
    std::cout << preset_table().str();
    return 0;
  }

  RunConfig cfg;
  try {
    Json doc = config_path.empty() ? Json::object() : read_json_file(config_path);
    if (doc.is_object()) {
      if (seed) doc["seed"] = *seed;
      if (threads) doc["threads"] = *threads;
      if (!out_dir.empty()) doc["out"] = out_dir;
    }
    cfg = parse_config(doc, sub->get_name());
  } catch (const InvalidArgument& e) {
    std::cerr << app.help() << '\n';
    return fail(2, "invalid-config", e.what());
  }

  try {
    const auto out = run(cfg);
    std::filesystem::create_directories(cfg.out);
    const auto base = std::filesystem::path(cfg.out) / out.stem;
    write_text(base.string() + ".csv", out.table.str());
    write_text(base.string() + ".json", out.manifest.dump(2) + "\n");
    std::cout << cfg.experiment << " " << cfg.label << ": " << out.summary << '\n';
    return 0;
  } catch (const InvalidArgument& e) {
    return fail(2, "invalid-config", e.what());
  } catch (const NumericalFailure& e) {
    return fail(1, "numerical-failure", e.what());
  } catch (const std::exception& e) {
    return fail(1, "error", e.what());
  }
}
