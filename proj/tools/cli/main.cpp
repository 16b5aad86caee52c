#include <iostream>

#include "config.hpp"
#include "suites.hpp"

int main(int argc, char** argv) {
  using namespace gl3gl2::cli;
  RunConfig cfg;
  try {
    cfg = parse_config(argc, argv);
  } catch (const HelpRequested& h) {
    std::cout << h.what();
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\nRun with --help for options.\n";
    return 2;
  }
  return run_suite(cfg, std::cout, std::cerr);
}
