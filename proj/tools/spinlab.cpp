// spinlab command-line front end.
#include "spinlab/acceptance.hpp"
#include "spinlab/config.hpp"
#include "spinlab/parallel.hpp"
#include "spinlab/run.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

namespace {

int threads_from_env() {
  const char* env = std::getenv("SPINLAB_THREADS");
  if (!env || !*env) return 1;
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (*end != '\0' || n < 1 || n > 1024) {
    std::cerr << "spinlab: ignoring invalid SPINLAB_THREADS='" << env << "'\n";
    return 1;
  }
  return static_cast<int>(n);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spin operator, cosine transform and zonoid certification on the sphere"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_prefix;
  int threads = 0;
  std::uint64_t seed = 0;
  bool seed_given = false;

  for (const std::string& name : spinlab::kCommands) {
    CLI::App* sub = app.add_subcommand(name, "run the " + name + " pipeline");
    sub->add_option("--config", config_path, "JSON experiment config")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_prefix, "output path prefix (overrides the config)");
    sub->add_option("--threads", threads, "worker threads (default: SPINLAB_THREADS or 1)")->check(CLI::Range(1, 1024));
    sub->add_option_function<std::uint64_t>("--seed", [&](const std::uint64_t& s) {
      seed = s;
      seed_given = true;
    }, "seed for randomized fixtures");
  }
  CLI::App* selftest = app.add_subcommand("selftest", "run the acceptance suite");
  selftest->add_option("--threads", threads, "worker threads")->check(CLI::Range(1, 1024));
  std::uint64_t selftest_seed = 1;
  selftest->add_option("--seed", selftest_seed, "seed for randomized fixtures");

  CLI11_PARSE(app, argc, argv);
  spinlab::set_thread_count(threads > 0 ? threads : threads_from_env());

  CLI::App* chosen = app.get_subcommands().front();
  if (chosen == selftest) {
    const auto results = spinlab::run_acceptance(selftest_seed);
    std::cout << spinlab::format_results(results);
    for (const auto& r : results) {
      if (!r.pass) return 1;
    }
    return 0;
  }

  try {
    spinlab::ExperimentConfig config = spinlab::load_config(config_path);
    if (!config.command.empty() && config.command != chosen->get_name()) {
      throw spinlab::ConfigError("config command '" + config.command + "' does not match '" + chosen->get_name() + "'");
    }
    config.command = chosen->get_name();
    if (!out_prefix.empty()) config.out = out_prefix;
    if (seed_given) config.seed = seed;
    const spinlab::ReportBundle bundle = spinlab::run(config);
    spinlab::write_bundle(bundle, config.out);
    std::cout << "wrote " << config.out << ".json";
    if (!bundle.profile_csv.empty()) std::cout << ", " << config.out << "_profile.csv";
    if (!bundle.scan_csv.empty()) std::cout << ", " << config.out << "_scan.csv";
    std::cout << '\n';
  } catch (const spinlab::ConfigError& e) {
    std::cerr << "spinlab: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "spinlab: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
