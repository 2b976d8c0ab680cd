#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "cbd/system.hpp"

namespace cbd {

/// A SystemError carrying the 1-based position of the offending token.
class ParseError : public SystemError {
 public:
  ParseError(Kind kind, std::size_t line, std::size_t column, const std::string& message);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

/**
 * Parse the line-oriented system format:
 *
 *     # comment
 *     content <id> outcomes <v1> <v2> ...
 *     context <id> ["label text"]
 *     bunch <context-id> members <q1> <q2> ...
 *       <v1> <v2> ... : <probability>
 *
 * Probabilities are `p/q` or exact decimals. Tuples left out of a bunch have
 * probability 0. Declarations may appear in any order.
 */
System parse_system(std::string_view text);

/// Canonical text form; parse_system(serialize_system(s)) == s.
std::string serialize_system(const System& system);

}  // namespace cbd
