#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "cbd/contextuality.hpp"

namespace cbd {

/**
 * Sidecar expectations for a corpus entry, `<name>.expected`:
 *
 *     mode extended
 *     verdict contextual
 *     degree 1
 *     provenance oracle: cbd analyze corpus/pr_box_extended.system --oracle
 *
 * `#` starts a comment. All four keys are required.
 */
struct CorpusExpectation {
  Mode mode = Mode::Extended;
  bool noncontextual = true;
  Rational degree;
  std::string provenance;
};

CorpusExpectation parse_expectation(std::string_view text);

struct CorpusResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/**
 * Check every `<name>.system` / `<name>.expected` pair in `dir`, in name
 * order. Each entry is analyzed with the oracle cross-check enabled and
 * must also be a fixpoint of parse/serialize. A half-present pair is a
 * failure. Throws std::runtime_error if `dir` is not a directory.
 */
std::vector<CorpusResult> corpus_check(const std::filesystem::path& dir);

}  // namespace cbd
