#include "cbd/coupling.hpp"

#include <algorithm>

namespace cbd {

CouplingSpace::CouplingSpace(const System& system, std::size_t max_assignments) : labels_(system.labels()) {
  for (const auto& label : labels_) {
    const auto& outcomes = system.find_content(label.content)->outcomes;
    if (size_ > max_assignments / outcomes.size())
      throw SizeCapExceeded("system too large for exact method: more than " + std::to_string(max_assignments) +
                            " global assignments");
    size_ *= outcomes.size();
    outcomes_.push_back(outcomes);
  }
  strides_.assign(labels_.size(), 1);
  for (std::size_t k = labels_.size(); k-- > 1;) strides_[k - 1] = strides_[k] * outcomes_[k].size();
}

std::size_t CouplingSpace::label_index(const Label& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end())
    throw std::invalid_argument("label (" + label.content + ", " + label.context + ") not in the system");
  return static_cast<std::size_t>(it - labels_.begin());
}

std::vector<std::string> CouplingSpace::describe(std::size_t assignment) const {
  std::vector<std::string> out;
  out.reserve(labels_.size());
  for (std::size_t k = 0; k < labels_.size(); ++k) out.push_back(outcomes_[k][digit(assignment, k)]);
  return out;
}

CouplingProgram build_coupling_lp(const System& system, std::size_t max_assignments) {
  CouplingSpace space(system, max_assignments);
  const auto n = static_cast<Eigen::Index>(space.size());
  LinearProgram<Rational> lp(n);
  lp.add_equality(Vector<Rational>::Ones(n), Rational(1), "total mass");

  for (const auto& bunch : system.bunches()) {
    std::vector<std::size_t> members;
    for (const auto& m : bunch.members()) members.push_back(space.label_index({m.id, bunch.context()}));
    // rows[cell] collects the assignments restricting to that bunch cell
    Matrix<Rational> rows = Matrix<Rational>::Zero(static_cast<Eigen::Index>(bunch.cell_count()), n);
    std::vector<std::size_t> digits(members.size());
    for (std::size_t a = 0; a < space.size(); ++a) {
      for (std::size_t i = 0; i < members.size(); ++i) digits[i] = space.digit(a, members[i]);
      rows(static_cast<Eigen::Index>(bunch.encode(digits)), static_cast<Eigen::Index>(a)) = 1;
    }
    for (std::size_t cell = 0; cell < bunch.cell_count(); ++cell) {
      std::string label = "bunch " + bunch.context() + ":";
      auto d = bunch.decode(cell);
      for (std::size_t i = 0; i < d.size(); ++i) label += " " + bunch.members()[i].outcomes[d[i]];
      lp.add_equality(rows.row(static_cast<Eigen::Index>(cell)).transpose(),
                      bunch.pmf()[static_cast<Eigen::Index>(cell)], std::move(label));
    }
  }
  return {std::move(space), std::move(lp)};
}

Vector<Rational> equality_indicator(const CouplingSpace& space, const Label& a, const Label& b) {
  const auto ia = space.label_index(a);
  const auto ib = space.label_index(b);
  Vector<Rational> row = Vector<Rational>::Zero(static_cast<Eigen::Index>(space.size()));
  for (std::size_t x = 0; x < space.size(); ++x)
    if (space.digit(x, ia) == space.digit(x, ib)) row[static_cast<Eigen::Index>(x)] = 1;
  return row;
}

CouplingProgram add_equality_probability_constraint(CouplingProgram program, const Connection& conn,
                                                    std::string_view context_a, std::string_view context_b,
                                                    const Rational& value) {
  if (!conn.find(context_a) || !conn.find(context_b))
    throw std::invalid_argument("context not in the connection of content '" + conn.content + "'");
  if (value < 0 || value > 1) throw std::invalid_argument("equality probability must lie in [0, 1]");
  Label a{conn.content, std::string(context_a)};
  Label b{conn.content, std::string(context_b)};
  program.lp.add_equality(equality_indicator(program.space, a, b), value,
                          "Pr[" + conn.content + "^" + a.context + " = " + conn.content + "^" + b.context + "]");
  return program;
}

}  // namespace cbd
