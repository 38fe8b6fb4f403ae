#include <iostream>
#include <string>
#include <vector>

#include "sigmarev/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  sigmarev::cli::Context ctx{std::cout, std::cerr, sigmarev::http_transport(), sigmarev::cli::utc_now_iso};
  return sigmarev::cli::run(args, ctx);
}
