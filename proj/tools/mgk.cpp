#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "app.hpp"
#include "mgk/error.hpp"

namespace {

int run(int argc, char** argv) {
  CLI::App cli{"Exact checks for gamma convolution on monodromic modules over tori"};
  std::vector<std::string> words;
  std::string config_path, json_path, convention, c, profile = "smoke";
  int window = 0;
  long cap = 0;
  bool quiet = false;
  cli.add_option("command", words, "[check] key-prop|unipotent|e-theta|multiplier|coinvariants|wprime|tor-demo|suite")
      ->required()
      ->expected(1, 2);
  cli.add_option("--config", config_path, "TOML or JSON config");
  cli.add_option("--json", json_path, "write the JSON report here");
  cli.add_option("--convention", convention, "unsigned|signed")->check(CLI::IsMember({"unsigned", "signed"}));
  cli.add_option("--c", c, "exponential parameter, P/Q");
  cli.add_option("--window", window, "de Rham window (>= 8)");
  cli.add_option("--cap", cap, "group enumeration cap");
  cli.add_option("--profile", profile, "suite profile")->check(CLI::IsMember({"smoke", "full"}));
  cli.add_flag("-q,--quiet", quiet, "suppress the human-readable summary");
  try {
    cli.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return cli.exit(e);
  } catch (const CLI::ParseError& e) {
    cli.exit(e);
    return 2;
  }

  if (words.size() == 2 && words[0] != "check") {
    std::cerr << "error: unexpected argument '" << words[0] << "'\n";
    return 2;
  }
  const std::string command = words.back();

  mgk::app::RunConfig cfg;
  if (!config_path.empty()) cfg = mgk::app::load_config(config_path);
  if (!convention.empty())
    cfg.options.convention = convention == "signed" ? mgk::Convention::kSigned : mgk::Convention::kUnsigned;
  if (!c.empty()) cfg.c = mgk::Rational::parse(c);
  if (cli.count("--window")) cfg.options.window = window;
  if (cli.count("--cap")) {
    if (cap < 1) throw mgk::InputError("--cap must be positive");
    cfg.options.cap = static_cast<std::size_t>(cap);
  }

  nlohmann::json report;
  if (command == "suite") {
    std::vector<mgk::app::SuiteCase> cases;
    if (!config_path.empty()) {
      const auto& checks = cfg.checks.empty() ? mgk::app::kChecks : cfg.checks;
      for (const auto& check : checks) cases.push_back({check, check, cfg});
      profile = "config";
    } else {
      cases = mgk::app::suite_cases(profile);
      for (auto& sc : cases) {
        sc.config.options = cfg.options;
        if (!c.empty()) sc.config.c = cfg.c;
      }
    }
    report = mgk::app::run_suite(profile, cases);
  } else {
    report = mgk::app::run_check(command, cfg);
  }

  if (!quiet) std::cout << mgk::app::human_summary(report);
  if (!json_path.empty()) {
    std::ofstream out(json_path);
    if (!out) throw mgk::InputError(json_path + ": cannot write report");
    out << report.dump(2) << "\n";
  }
  return report["passed"].get<bool>() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const mgk::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const mgk::PreconditionError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
