#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cbd {

/**
 * Command-line entry point. `args` excludes the program name. Writes the
 * report to `out` and usage problems to `err`.
 *
 * Exit codes: 0 noncontextual, 1 contextual, 2 usage or input error,
 * 3 size cap exceeded or oracle disagreement. With several input files the
 * largest per-file code is returned.
 */
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cbd
