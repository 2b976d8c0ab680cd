#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cbd/rational.hpp"

namespace cbd {

/// Raised when a system (or one of its parts) violates a model invariant.
class SystemError : public std::runtime_error {
 public:
  enum class Kind {
    Syntax,
    PmfSum,
    NegativeProbability,
    DuplicateLabel,
    DuplicateDeclaration,
    UnknownOutcome,
    UnknownContent,
    UnknownContext,
    MissingBunch,
    InvalidOutcomeSet,
    ContentNotInBunch,
    OutcomeSetMismatch,
    Empty,
  };

  SystemError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// What a variable measures: an identifier plus its ordered outcome set.
struct Content {
  std::string id;
  std::vector<std::string> outcomes;

  /// Position of `symbol` in the outcome set, if present.
  std::optional<std::size_t> outcome_index(std::string_view symbol) const;

  friend bool operator==(const Content&, const Content&) = default;
};

/// The conditions under which a bunch of variables is recorded.
struct Context {
  std::string id;
  std::string label;  // optional human-readable description, may be empty

  friend bool operator==(const Context&, const Context&) = default;
};

/// Identifies one random variable by (content, context).
struct Label {
  std::string content;
  std::string context;

  friend auto operator<=>(const Label&, const Label&) = default;
};

/// A distribution over one content's outcome set, in outcome-set order.
struct Distribution {
  std::vector<std::string> outcomes;
  Vector<Rational> mass;

  Rational operator[](std::string_view outcome) const;

  friend bool operator==(const Distribution& a, const Distribution& b) {
    return a.outcomes == b.outcomes && a.mass == b.mass;
  }
};

/**
 * Jointly distributed variables sharing one context.
 *
 * The pmf is dense over the product of the members' outcome sets, laid out in
 * mixed radix with the first member most significant. Construction validates
 * nonnegativity, exact normalization and member distinctness.
 */
class Bunch {
 public:
  Bunch(std::string context, std::vector<Content> members, Vector<Rational> pmf);

  const std::string& context() const noexcept { return context_; }
  const std::vector<Content>& members() const noexcept { return members_; }
  const Vector<Rational>& pmf() const noexcept { return pmf_; }

  std::size_t cell_count() const noexcept { return static_cast<std::size_t>(pmf_.size()); }
  std::optional<std::size_t> member_index(std::string_view content) const;

  /// Outcome indices (one per member) of a flat cell index.
  std::vector<std::size_t> decode(std::size_t cell) const;
  std::size_t encode(std::span<const std::size_t> outcome_indices) const;

  Rational probability(std::span<const std::size_t> outcome_indices) const {
    return pmf_[static_cast<Eigen::Index>(encode(outcome_indices))];
  }

  friend bool operator==(const Bunch& a, const Bunch& b) {
    return a.context_ == b.context_ && a.members_ == b.members_ && a.pmf_ == b.pmf_;
  }

 private:
  std::string context_;
  std::vector<Content> members_;
  Vector<Rational> pmf_;
};

/// Marginal of one member of a bunch. Throws SystemError(ContentNotInBunch).
Distribution marginal(const Bunch& bunch, std::string_view content);

/**
 * A validated system of bunches.
 *
 * Contents, contexts and bunches are held in canonical (lexicographic id)
 * order, so two systems built from permuted declarations compare equal.
 * There is deliberately no joint representation across bunches.
 */
class System {
 public:
  System(std::vector<Content> contents, std::vector<Context> contexts, std::vector<Bunch> bunches);

  const std::vector<Content>& contents() const noexcept { return contents_; }
  const std::vector<Context>& contexts() const noexcept { return contexts_; }
  const std::vector<Bunch>& bunches() const noexcept { return bunches_; }

  const Content* find_content(std::string_view id) const;
  const Context* find_context(std::string_view id) const;
  const Bunch& bunch_of(std::string_view context) const;

  /// Every label of the system, bunch by bunch in member order.
  std::vector<Label> labels() const;

  friend bool operator==(const System&, const System&) = default;

 private:
  std::vector<Content> contents_;
  std::vector<Context> contexts_;
  std::vector<Bunch> bunches_;
};

/// All variables sharing one content, with their marginals.
struct Connection {
  struct Variable {
    std::string context;
    Distribution distribution;
  };

  std::string content;
  std::vector<Variable> variables;

  const Variable* find(std::string_view context) const;
};

/// One connection per content used in at least one bunch, in content order.
std::vector<Connection> connections_of(const System& system);

}  // namespace cbd
