// Command-line front end; talks to the library only through the C API.
#include <cstdint>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "asdlab/asdlab.h"
#include "json.hpp"

namespace {

struct Args {
  std::string config;
  std::string out = ".";
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
};

void print_summary(const std::string& command, const std::string& report) {
  const auto j = nlohmann::ordered_json::parse(report);
  if (command == "verify") {
    for (const auto& c : j["criteria"])
      std::cout << "criterion " << c["id"].get<int>() << " " << c["name"].get<std::string>() << ": "
                << (c["passed"].get<bool>() ? "PASS" : "FAIL") << "\n";
    std::cout << (j["passed"].get<bool>() ? "all criteria passed" : "verification failed") << "\n";
  } else if (command == "integrate") {
    std::cout << "family " << j["family"].get<std::string>() << ", " << j["termination"].get<std::string>()
              << " at t = " << j["t_reached"].get<double>() << "\n";
  } else if (command == "classify") {
    std::cout << "case " << j["case"].get<std::string>() << ", Painleve " << j["kind"].get<std::string>() << ", "
              << j["interpretation"].get<std::string>() << "\n";
  } else if (command == "reduce") {
    for (const auto& b : j["branches"])
      std::cout << "branch " << b["branch"].get<int>() << ": residual " << b["residual"].dump() << "\n";
  } else if (command == "monodromy" && j.contains("drift")) {
    std::cout << "trace drift " << j["drift"].get<double>() << "\n";
  } else if (command == "monodromy") {
    for (const auto& l : j["loops"]) std::cout << "loop trace " << l["trace"].dump() << "\n";
    if (j.contains("total"))
      std::cout << "all-poles loop trace " << j["total"]["all_poles_circle"]["trace"].dump() << "\n";
  }
}

int run(const std::string& command, const Args& a) {
  std::unique_ptr<asdlab_session, void (*)(asdlab_session*)> s(asdlab_session_create(), asdlab_session_destroy);
  if (!s) {
    std::cerr << "asdlab: cannot create session\n";
    return ASDLAB_INTERNAL;
  }
  int st = a.config.empty() ? asdlab_session_set_config(s.get(), "{}") : asdlab_session_load_config(s.get(), a.config.c_str());
  if (st == ASDLAB_OK) st = asdlab_session_set_output_dir(s.get(), a.out.c_str());
  if (st == ASDLAB_OK && a.seed) st = asdlab_session_set_seed(s.get(), *a.seed);
  if (st == ASDLAB_OK && a.tol) st = asdlab_session_set_tolerance(s.get(), *a.tol);
  if (st == ASDLAB_OK || st == ASDLAB_VERIFY_FAILED) st = asdlab_session_run(s.get(), command.c_str());
  if (st != ASDLAB_OK && st != ASDLAB_VERIFY_FAILED) {
    std::cerr << "asdlab " << command << ": " << asdlab_session_last_error(s.get()) << "\n";
    return st;
  }
  print_summary(command, asdlab_session_report(s.get()));
  return st;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ASD Einstein metrics, Painleve reductions and isomonodromy checks"};
  app.set_version_flag("--version", std::string(asdlab_version()));
  app.require_subcommand(1);

  Args args;
  std::string chosen;
  const struct {
    const char* name;
    const char* help;
    bool needs_config;
  } commands[] = {
      {"integrate", "integrate the diagonal or non-diagonal flow", true},
      {"reduce", "reduce a diagonal trajectory to Painleve VI", true},
      {"classify", "classify the poles of B1 and name the Painleve equation", true},
      {"monodromy", "monodromy traces, total monodromy and drift", true},
      {"verify", "run the acceptance suite", false},
  };
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    auto* opt = sub->add_option("--config", args.config, "JSON config file");
    if (c.needs_config) opt->required();
    sub->add_option("--out", args.out, "output directory")->capture_default_str();
    sub->add_option("--seed", args.seed, "seed for randomized runs");
    sub->add_option("--tol", args.tol, "relative tolerance override");
    sub->callback([&chosen, name = std::string(c.name)] { chosen = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return ASDLAB_CONFIG_ERROR;
  }
  try {
    return run(chosen, args);
  } catch (const std::exception& e) {
    std::cerr << "asdlab: " << e.what() << "\n";
    return ASDLAB_INTERNAL;
  }
}
