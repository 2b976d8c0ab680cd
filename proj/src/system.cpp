#include "cbd/system.hpp"

#include <algorithm>
#include <set>

namespace cbd {

std::optional<std::size_t> Content::outcome_index(std::string_view symbol) const {
  auto it = std::find(outcomes.begin(), outcomes.end(), symbol);
  if (it == outcomes.end()) return std::nullopt;
  return static_cast<std::size_t>(it - outcomes.begin());
}

Rational Distribution::operator[](std::string_view outcome) const {
  auto it = std::find(outcomes.begin(), outcomes.end(), outcome);
  if (it == outcomes.end())
    throw SystemError(SystemError::Kind::UnknownOutcome,
                      "outcome '" + std::string(outcome) + "' not in distribution");
  return mass[it - outcomes.begin()];
}

namespace {

void validate_content(const Content& content) {
  std::set<std::string> seen(content.outcomes.begin(), content.outcomes.end());
  if (content.outcomes.size() < 2 || seen.size() != content.outcomes.size())
    throw SystemError(SystemError::Kind::InvalidOutcomeSet,
                      "content '" + content.id + "' needs at least two distinct outcomes");
}

}  // namespace

Bunch::Bunch(std::string context, std::vector<Content> members, Vector<Rational> pmf)
    : context_(std::move(context)), members_(std::move(members)), pmf_(std::move(pmf)) {
  if (members_.empty())
    throw SystemError(SystemError::Kind::Empty, "bunch '" + context_ + "' has no members");
  std::size_t cells = 1;
  std::set<std::string> ids;
  for (const auto& m : members_) {
    validate_content(m);
    if (!ids.insert(m.id).second)
      throw SystemError(SystemError::Kind::DuplicateLabel,
                        "content '" + m.id + "' repeated in bunch '" + context_ + "'");
    cells *= m.outcomes.size();
  }
  if (static_cast<std::size_t>(pmf_.size()) != cells)
    throw SystemError(SystemError::Kind::Syntax,
                      "bunch '" + context_ + "' pmf has wrong number of cells");
  for (Eigen::Index i = 0; i < pmf_.size(); ++i)
    if (pmf_[i] < 0)
      throw SystemError(SystemError::Kind::NegativeProbability,
                        "bunch '" + context_ + "' has a negative probability");
  Rational total = pmf_.sum();
  if (total != 1)
    throw SystemError(SystemError::Kind::PmfSum,
                      "bunch '" + context_ + "' pmf sums to " + to_string(total) + ", not 1");
}

std::optional<std::size_t> Bunch::member_index(std::string_view content) const {
  for (std::size_t i = 0; i < members_.size(); ++i)
    if (members_[i].id == content) return i;
  return std::nullopt;
}

std::vector<std::size_t> Bunch::decode(std::size_t cell) const {
  std::vector<std::size_t> digits(members_.size());
  for (std::size_t i = members_.size(); i-- > 0;) {
    auto radix = members_[i].outcomes.size();
    digits[i] = cell % radix;
    cell /= radix;
  }
  return digits;
}

std::size_t Bunch::encode(std::span<const std::size_t> outcome_indices) const {
  std::size_t cell = 0;
  for (std::size_t i = 0; i < members_.size(); ++i)
    cell = cell * members_[i].outcomes.size() + outcome_indices[i];
  return cell;
}

Distribution marginal(const Bunch& bunch, std::string_view content) {
  auto index = bunch.member_index(content);
  if (!index)
    throw SystemError(SystemError::Kind::ContentNotInBunch,
                      "content '" + std::string(content) + "' not in bunch '" + bunch.context() + "'");
  const Content& member = bunch.members()[*index];
  Distribution d{member.outcomes, Vector<Rational>::Zero(static_cast<Eigen::Index>(member.outcomes.size()))};
  for (std::size_t cell = 0; cell < bunch.cell_count(); ++cell)
    d.mass[static_cast<Eigen::Index>(bunch.decode(cell)[*index])] += bunch.pmf()[static_cast<Eigen::Index>(cell)];
  return d;
}

System::System(std::vector<Content> contents, std::vector<Context> contexts, std::vector<Bunch> bunches)
    : contents_(std::move(contents)), contexts_(std::move(contexts)), bunches_(std::move(bunches)) {
  auto by_id = [](const auto& a, const auto& b) { return a.id < b.id; };
  std::sort(contents_.begin(), contents_.end(), by_id);
  std::sort(contexts_.begin(), contexts_.end(), by_id);
  std::sort(bunches_.begin(), bunches_.end(),
            [](const Bunch& a, const Bunch& b) { return a.context() < b.context(); });

  if (bunches_.empty()) throw SystemError(SystemError::Kind::Empty, "system has no bunches");
  for (std::size_t i = 0; i < contents_.size(); ++i) {
    validate_content(contents_[i]);
    if (i > 0 && contents_[i - 1].id == contents_[i].id)
      throw SystemError(SystemError::Kind::DuplicateDeclaration,
                        "content '" + contents_[i].id + "' declared twice");
  }
  for (std::size_t i = 1; i < contexts_.size(); ++i)
    if (contexts_[i - 1].id == contexts_[i].id)
      throw SystemError(SystemError::Kind::DuplicateDeclaration,
                        "context '" + contexts_[i].id + "' declared twice");

  for (std::size_t i = 0; i < bunches_.size(); ++i) {
    const Bunch& b = bunches_[i];
    if (!find_context(b.context()))
      throw SystemError(SystemError::Kind::UnknownContext,
                        "bunch for undeclared context '" + b.context() + "'");
    if (i > 0 && bunches_[i - 1].context() == b.context())
      throw SystemError(SystemError::Kind::DuplicateLabel,
                        "context '" + b.context() + "' has more than one bunch");
    for (const auto& m : b.members()) {
      const Content* declared = find_content(m.id);
      if (!declared)
        throw SystemError(SystemError::Kind::UnknownContent,
                          "bunch '" + b.context() + "' uses undeclared content '" + m.id + "'");
      if (declared->outcomes != m.outcomes)
        throw SystemError(SystemError::Kind::OutcomeSetMismatch,
                          "content '" + m.id + "' has a different outcome set in bunch '" +
                              b.context() + "'");
    }
  }
  if (bunches_.size() != contexts_.size())
    for (const auto& c : contexts_) {
      auto it = std::find_if(bunches_.begin(), bunches_.end(),
                             [&](const Bunch& b) { return b.context() == c.id; });
      if (it == bunches_.end())
        throw SystemError(SystemError::Kind::MissingBunch, "context '" + c.id + "' has no bunch");
    }
}

const Content* System::find_content(std::string_view id) const {
  auto it = std::lower_bound(contents_.begin(), contents_.end(), id,
                             [](const Content& c, std::string_view v) { return c.id < v; });
  return it != contents_.end() && it->id == id ? &*it : nullptr;
}

const Context* System::find_context(std::string_view id) const {
  auto it = std::lower_bound(contexts_.begin(), contexts_.end(), id,
                             [](const Context& c, std::string_view v) { return c.id < v; });
  return it != contexts_.end() && it->id == id ? &*it : nullptr;
}

const Bunch& System::bunch_of(std::string_view context) const {
  auto it = std::lower_bound(bunches_.begin(), bunches_.end(), context,
                             [](const Bunch& b, std::string_view v) { return b.context() < v; });
  if (it == bunches_.end() || it->context() != context)
    throw SystemError(SystemError::Kind::UnknownContext, "no bunch for context '" + std::string(context) + "'");
  return *it;
}

std::vector<Label> System::labels() const {
  std::vector<Label> out;
  for (const auto& b : bunches_)
    for (const auto& m : b.members()) out.push_back({m.id, b.context()});
  return out;
}

const Connection::Variable* Connection::find(std::string_view context) const {
  for (const auto& v : variables)
    if (v.context == context) return &v;
  return nullptr;
}

std::vector<Connection> connections_of(const System& system) {
  std::vector<Connection> out;
  for (const auto& content : system.contents()) {
    Connection conn{content.id, {}};
    for (const auto& b : system.bunches())
      if (b.member_index(content.id)) conn.variables.push_back({b.context(), marginal(b, content.id)});
    if (!conn.variables.empty()) out.push_back(std::move(conn));
  }
  return out;
}

}  // namespace cbd
