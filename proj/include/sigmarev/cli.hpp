#pragma once

#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "sigmarev/market_data.hpp"

namespace sigmarev::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kDataError = 2 };

/// Everything a command touches outside the filesystem, injectable for tests.
struct Context {
  std::ostream& out;
  std::ostream& err;
  Transport transport = http_transport();
  /// UTC ISO-8601 timestamp for report envelopes.
  std::function<std::string()> now_utc;
};

std::string utc_now_iso();

/// Entry point shared by the executable and tests. `args` excludes argv[0].
int run(const std::vector<std::string>& args, Context& ctx);

}  // namespace sigmarev::cli
