#ifndef ARCDELTA_RUNNER_HPP
#define ARCDELTA_RUNNER_HPP

#include <optional>
#include <string>

#include "arcdelta/config.hpp"

namespace arcdelta {

struct RunOptions {
  std::optional<std::string> out_dir;  // overrides config
  std::optional<int> workers;
  bool quiet = false;
};

// Executes the configured task, writes CSV/JSON artifacts plus a run
// manifest into the output directory. Returns the process exit status:
// 0 iff every requested row succeeded, 1 on row failures, 2 on setup errors
// (unwritable output directory, invalid curve).
int run(const RunConfig& config, const RunOptions& options = {});

}  // namespace arcdelta

#endif
