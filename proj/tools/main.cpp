#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "scenario.hpp"

int main(int argc, char** argv) {
  using namespace fockbell::cli;
  std::vector<std::string> args(argv + 1, argv + argc);
  ScenarioConfig config;
  try {
    config = parse_config(args);
  } catch (const HelpRequested& h) {
    std::cout << h.what();
    return kSuccess;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    const ResultRecord result = run(config);
    const std::string text = render(config, result);
    if (config.output == "-") {
      std::cout << text;
    } else {
      std::ofstream out(config.output);
      if (!out) {
        std::cerr << "error: cannot write " << config.output << "\n";
        return kValidation;
      }
      out << text;
    }
    if (result.exit_code == kExpectationMismatch)
      std::cerr << "expectation mismatch: verdict " << result.record.value("verdict", false)
                << " but --expect-violation " << (*config.expect_violation ? "true" : "false")
                << "\n";
    return result.exit_code;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  }
}
