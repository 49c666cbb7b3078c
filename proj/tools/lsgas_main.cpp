#include <iostream>
#include <string>
#include <vector>

#include "lsgas/cli_config.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    const auto config = lsgas::cli::parse_config(args);
    return lsgas::cli::run(config);
  } catch (const lsgas::cli::HelpRequested& help) {
    std::cout << help.text;
    return 0;
  } catch (const lsgas::cli::ConfigError& e) {
    std::cerr << "error (" << e.field << "): " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
