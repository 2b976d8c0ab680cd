#include "cbd/system_io.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>

namespace cbd {

ParseError::ParseError(Kind kind, std::size_t line, std::size_t column, const std::string& message)
    : SystemError(kind, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column),
      message_(message) {}

namespace {

using Kind = SystemError::Kind;

struct Token {
  std::string text;
  std::size_t column;  // 1-based
  bool quoted = false;
};

struct Cell {
  std::vector<Token> outcomes;
  Token probability;
  std::size_t line;
};

struct RawBunch {
  Token context;
  std::vector<Token> members;
  std::vector<Cell> cells;
  std::size_t line;
};

struct Declared {
  std::size_t line;
  std::size_t column;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  System run() {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text_.size()) {
      auto end = text_.find('\n', pos);
      if (end == std::string_view::npos) end = text_.size();
      std::string_view line = text_.substr(pos, end - pos);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      ++line_no;
      parse_line(line, line_no);
      if (end == text_.size()) break;
      pos = end + 1;
    }
    return build();
  }

 private:
  [[noreturn]] void fail(Kind kind, std::size_t line, std::size_t column, const std::string& msg) const {
    throw ParseError(kind, line, column, msg);
  }

  std::vector<Token> tokenize(std::string_view line, std::size_t line_no) const {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
      char c = line[i];
      if (c == ' ' || c == '\t') {
        ++i;
      } else if (c == '#') {
        break;
      } else if (c == '"') {
        Token tok{"", i + 1, true};
        ++i;
        bool closed = false;
        while (i < line.size()) {
          if (line[i] == '\\' && i + 1 < line.size()) {
            tok.text += line[i + 1];
            i += 2;
          } else if (line[i] == '"') {
            closed = true;
            ++i;
            break;
          } else {
            tok.text += line[i++];
          }
        }
        if (!closed) fail(Kind::Syntax, line_no, tok.column, "unterminated string");
        tokens.push_back(std::move(tok));
      } else if (c == ':') {
        tokens.push_back({":", i + 1});
        ++i;
      } else {
        Token tok{"", i + 1};
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '#' && line[i] != ':' &&
               line[i] != '"')
          tok.text += line[i++];
        tokens.push_back(std::move(tok));
      }
    }
    return tokens;
  }

  void require_plain(const Token& tok, std::size_t line_no, const char* what) const {
    if (tok.quoted || tok.text == ":")
      fail(Kind::Syntax, line_no, tok.column, std::string("expected ") + what);
  }

  void parse_line(std::string_view line, std::size_t line_no) {
    auto tokens = tokenize(line, line_no);
    if (tokens.empty()) return;
    bool indented = line.front() == ' ' || line.front() == '\t';

    if (indented) {
      if (!current_) fail(Kind::Syntax, line_no, tokens.front().column, "probability line outside a bunch");
      auto colon = std::find_if(tokens.begin(), tokens.end(), [](const Token& t) { return t.text == ":" && !t.quoted; });
      if (colon == tokens.end()) fail(Kind::Syntax, line_no, tokens.back().column, "expected ':' before probability");
      if (std::next(colon) == tokens.end() || std::next(colon, 2) != tokens.end())
        fail(Kind::Syntax, line_no, colon->column, "expected exactly one probability after ':'");
      Cell cell{{tokens.begin(), colon}, *std::next(colon), line_no};
      for (const auto& t : cell.outcomes) require_plain(t, line_no, "outcome symbol");
      require_plain(cell.probability, line_no, "probability");
      current_->cells.push_back(std::move(cell));
      return;
    }

    current_ = nullptr;
    const Token& keyword = tokens.front();
    if (keyword.text == "content") {
      if (tokens.size() < 3 || tokens[2].text != "outcomes")
        fail(Kind::Syntax, line_no, keyword.column, "expected 'content <id> outcomes <v1> <v2> ...'");
      require_plain(tokens[1], line_no, "content id");
      if (contents_.count(tokens[1].text))
        fail(Kind::DuplicateDeclaration, line_no, tokens[1].column, "content '" + tokens[1].text + "' declared twice");
      Content content{tokens[1].text, {}};
      for (std::size_t i = 3; i < tokens.size(); ++i) {
        require_plain(tokens[i], line_no, "outcome symbol");
        if (std::find(content.outcomes.begin(), content.outcomes.end(), tokens[i].text) != content.outcomes.end())
          fail(Kind::InvalidOutcomeSet, line_no, tokens[i].column, "outcome '" + tokens[i].text + "' repeated");
        content.outcomes.push_back(tokens[i].text);
      }
      if (content.outcomes.size() < 2)
        fail(Kind::InvalidOutcomeSet, line_no, keyword.column, "content needs at least two outcomes");
      contents_.emplace(content.id, std::make_pair(content, Declared{line_no, tokens[1].column}));
    } else if (keyword.text == "context") {
      if (tokens.size() < 2 || tokens.size() > 3)
        fail(Kind::Syntax, line_no, keyword.column, "expected 'context <id> [\"label\"]'");
      require_plain(tokens[1], line_no, "context id");
      if (tokens.size() == 3 && !tokens[2].quoted)
        fail(Kind::Syntax, line_no, tokens[2].column, "context label must be quoted");
      if (contexts_.count(tokens[1].text))
        fail(Kind::DuplicateDeclaration, line_no, tokens[1].column, "context '" + tokens[1].text + "' declared twice");
      Context context{tokens[1].text, tokens.size() == 3 ? tokens[2].text : ""};
      contexts_.emplace(context.id, std::make_pair(context, Declared{line_no, tokens[1].column}));
    } else if (keyword.text == "bunch") {
      if (tokens.size() < 4 || tokens[2].text != "members")
        fail(Kind::Syntax, line_no, keyword.column, "expected 'bunch <context> members <q1> ...'");
      require_plain(tokens[1], line_no, "context id");
      for (const auto& b : bunches_)
        if (b.context.text == tokens[1].text)
          fail(Kind::DuplicateLabel, line_no, tokens[1].column,
               "context '" + tokens[1].text + "' already has a bunch (declared on line " + std::to_string(b.line) + ")");
      RawBunch raw{tokens[1], {tokens.begin() + 3, tokens.end()}, {}, line_no};
      for (std::size_t i = 0; i < raw.members.size(); ++i) {
        require_plain(raw.members[i], line_no, "content id");
        for (std::size_t j = 0; j < i; ++j)
          if (raw.members[j].text == raw.members[i].text)
            fail(Kind::DuplicateLabel, line_no, raw.members[i].column,
                 "label (" + raw.members[i].text + ", " + raw.context.text + ") appears twice");
      }
      bunches_.push_back(std::move(raw));
      current_ = &bunches_.back();
    } else {
      fail(Kind::Syntax, line_no, keyword.column, "unknown directive '" + keyword.text + "'");
    }
  }

  Bunch resolve(const RawBunch& raw) const {
    if (!contexts_.count(raw.context.text))
      fail(Kind::UnknownContext, raw.line, raw.context.column, "undeclared context '" + raw.context.text + "'");
    std::vector<Content> members;
    std::size_t cells = 1;
    for (const auto& tok : raw.members) {
      auto it = contents_.find(tok.text);
      if (it == contents_.end())
        fail(Kind::UnknownContent, raw.line, tok.column, "undeclared content '" + tok.text + "'");
      members.push_back(it->second.first);
      cells *= members.back().outcomes.size();
    }
    Vector<Rational> pmf = Vector<Rational>::Zero(static_cast<Eigen::Index>(cells));
    std::vector<bool> seen(cells, false);
    for (const auto& cell : raw.cells) {
      if (cell.outcomes.size() != members.size())
        fail(Kind::Syntax, cell.line, cell.outcomes.empty() ? cell.probability.column : cell.outcomes.front().column,
             "expected " + std::to_string(members.size()) + " outcomes, found " + std::to_string(cell.outcomes.size()));
      std::size_t index = 0;
      for (std::size_t i = 0; i < members.size(); ++i) {
        auto k = members[i].outcome_index(cell.outcomes[i].text);
        if (!k)
          fail(Kind::UnknownOutcome, cell.line, cell.outcomes[i].column,
               "'" + cell.outcomes[i].text + "' is not an outcome of content '" + members[i].id + "'");
        index = index * members[i].outcomes.size() + *k;
      }
      if (seen[index])
        fail(Kind::DuplicateDeclaration, cell.line, cell.outcomes.front().column, "outcome tuple listed twice");
      seen[index] = true;
      Rational p;
      try {
        p = parse_rational(cell.probability.text);
      } catch (const std::invalid_argument& e) {
        fail(Kind::Syntax, cell.line, cell.probability.column, e.what());
      }
      if (p < 0) fail(Kind::NegativeProbability, cell.line, cell.probability.column, "negative probability");
      pmf[static_cast<Eigen::Index>(index)] = p;
    }
    Rational total = pmf.sum();
    if (total != 1)
      fail(Kind::PmfSum, raw.line, raw.context.column,
           "pmf of bunch '" + raw.context.text + "' sums to " + to_string(total) + ", not 1");
    return Bunch(raw.context.text, std::move(members), std::move(pmf));
  }

  System build() const {
    std::vector<Bunch> bunches;
    for (const auto& raw : bunches_) bunches.push_back(resolve(raw));
    for (const auto& [id, entry] : contexts_) {
      bool has = std::any_of(bunches_.begin(), bunches_.end(), [&](const RawBunch& b) { return b.context.text == id; });
      if (!has) fail(Kind::MissingBunch, entry.second.line, entry.second.column, "context '" + id + "' has no bunch");
    }
    if (bunches.empty()) fail(Kind::Empty, 1, 1, "system declares no bunches");
    std::vector<Content> contents;
    for (const auto& [id, entry] : contents_) contents.push_back(entry.first);
    std::vector<Context> contexts;
    for (const auto& [id, entry] : contexts_) contexts.push_back(entry.first);
    return System(std::move(contents), std::move(contexts), std::move(bunches));
  }

  std::string_view text_;
  std::map<std::string, std::pair<Content, Declared>> contents_;
  std::map<std::string, std::pair<Context, Declared>> contexts_;
  std::vector<RawBunch> bunches_;
  RawBunch* current_ = nullptr;
};

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

System parse_system(std::string_view text) {
  Parser parser(text);
  return parser.run();
}

std::string serialize_system(const System& system) {
  std::ostringstream out;
  for (const auto& c : system.contents()) {
    out << "content " << c.id << " outcomes";
    for (const auto& o : c.outcomes) out << ' ' << o;
    out << '\n';
  }
  out << '\n';
  for (const auto& c : system.contexts()) {
    out << "context " << c.id;
    if (!c.label.empty()) out << ' ' << quote(c.label);
    out << '\n';
  }
  for (const auto& b : system.bunches()) {
    out << "\nbunch " << b.context() << " members";
    for (const auto& m : b.members()) out << ' ' << m.id;
    out << '\n';
    for (std::size_t cell = 0; cell < b.cell_count(); ++cell) {
      const Rational& p = b.pmf()[static_cast<Eigen::Index>(cell)];
      if (p == 0) continue;
      out << ' ';
      auto digits = b.decode(cell);
      for (std::size_t i = 0; i < digits.size(); ++i) out << ' ' << b.members()[i].outcomes[digits[i]];
      out << " : " << to_string(p) << '\n';
    }
  }
  return out.str();
}

}  // namespace cbd
