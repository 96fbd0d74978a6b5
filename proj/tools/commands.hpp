#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tps::cli {

/// Runs the polysemy command line with argv[0] included. Returns the
/// process exit status; diagnostics go to `err`, summaries to `out`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tps::cli
