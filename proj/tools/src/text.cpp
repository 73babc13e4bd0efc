#include "freeiso/cli/text.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <sstream>

namespace freeiso::cli {

namespace {

bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

LetterString inverse_letters(const LetterString& s) {
  LetterString out;
  out.reserve(s.size());
  for (auto it = s.rbegin(); it != s.rend(); ++it) out.push_back(it->inverse());
  return out;
}

LetterString power_letters(const LetterString& s, long long k) {
  const LetterString base = k < 0 ? inverse_letters(s) : s;
  LetterString out;
  for (long long i = 0; i < (k < 0 ? -k : k); ++i) out.insert(out.end(), base.begin(), base.end());
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  std::size_t pos() const { return i_; }
  bool done() {
    skip_space();
    return i_ >= text_.size();
  }
  char peek() {
    skip_space();
    return i_ < text_.size() ? text_[i_] : '\0';
  }
  [[noreturn]] void fail(const std::string& what) { throw ParseError(pos(), what); }
  void expect(char c) {
    if (peek() != c) {
      fail(std::string("expected '") + c + "'" + (done() ? " before end of input" : ""));
    }
    ++i_;
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++i_;
    return true;
  }

  std::string name() {
    skip_space();
    if (i_ >= text_.size() || !is_name_start(text_[i_])) fail("expected a generator name");
    std::size_t start = i_;
    while (i_ < text_.size() && is_name_char(text_[i_])) ++i_;
    return std::string(text_.substr(start, i_ - start));
  }

  long long integer() {
    skip_space();
    std::size_t start = i_;
    if (i_ < text_.size() && (text_[i_] == '-' || text_[i_] == '+')) ++i_;
    while (i_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i_]))) ++i_;
    long long v = 0;
    if (i_ == start) fail("expected an integer exponent");
    const char* first = text_.data() + start + (text_[start] == '+' ? 1 : 0);
    auto [ptr, ec] = std::from_chars(first, text_.data() + i_, v);
    if (ec != std::errc() || ptr != text_.data() + i_ || i_ == start) {
      i_ = start;
      fail("expected an integer exponent");
    }
    return v;
  }

  // word := factor (['*'] factor)*, ending at ',', ']', ')', '>', '|' or end.
  LetterString word(std::span<const std::string> names) {
    LetterString out;
    bool first = true;
    while (true) {
      char c = peek();
      if (c == '\0' || c == ',' || c == ']' || c == ')' || c == '>' || c == '|') {
        if (first) fail("expected a word");
        return out;
      }
      if (!first && c == '*') {
        ++i_;
      }
      LetterString f = factor(names);
      out.insert(out.end(), f.begin(), f.end());
      first = false;
    }
  }

 private:
  void skip_space() {
    while (i_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[i_]))) ++i_;
  }

  LetterString factor(std::span<const std::string> names) {
    LetterString base;
    bool is_generator = false;
    char c = peek();
    std::size_t at = pos();
    if (c == '[') {
      ++i_;
      LetterString u = word(names);
      expect(',');
      LetterString v = word(names);
      if (peek() != ']') fail("unbalanced '[': expected ']'");
      ++i_;
      base = u;
      for (const auto& part : {v, inverse_letters(u), inverse_letters(v)}) {
        base.insert(base.end(), part.begin(), part.end());
      }
    } else if (c == '(') {
      ++i_;
      base = word(names);
      if (peek() != ')') fail("unbalanced '(': expected ')'");
      ++i_;
    } else if (c == '1') {
      ++i_;
    } else if (is_name_start(c)) {
      std::string n = name();
      auto it = std::find(names.begin(), names.end(), n);
      if (it == names.end()) throw ParseError(at, "unknown generator '" + n + "'");
      base.push_back(Letter(static_cast<GeneratorId>(it - names.begin()), 1));
      is_generator = true;
    } else if (c == ']' || c == ')') {
      fail(std::string("unbalanced '") + c + "'");
    } else {
      fail(std::string("unexpected character '") + c + "'");
    }
    if (accept('^')) {
      std::size_t exp_at = pos();
      long long k = integer();
      if (k == 0 && is_generator) throw ParseError(exp_at, "zero exponent");
      return power_letters(base, k);
    }
    return base;
  }

  std::string_view text_;
  std::size_t i_ = 0;
};

}  // namespace

LetterString parse_letters(std::string_view text, std::span<const std::string> names) {
  Parser p(text);
  if (p.done()) throw ParseError(0, "empty word");
  LetterString s = p.word(names);
  if (!p.done()) p.fail(std::string("unexpected '") + p.peek() + "'");
  return s;
}

Word parse_word(std::string_view text, std::span<const std::string> names) {
  return Word::reduce(parse_letters(text, names));
}

Presentation parse_presentation(std::string_view text) {
  Parser p(text);
  p.expect('<');
  std::vector<std::string> names;
  if (p.peek() != '|') {
    std::set<std::string> seen;
    do {
      std::size_t at = p.pos();
      std::string n = p.name();
      if (!seen.insert(n).second) throw ParseError(at, "duplicate generator '" + n + "'");
      names.push_back(std::move(n));
    } while (p.accept(','));
  }
  p.expect('|');
  std::vector<Word> relators;
  if (p.peek() != '>') {
    do {
      relators.push_back(Word::reduce(p.word(names)));
    } while (p.accept(','));
  }
  if (p.peek() != '>') p.fail(p.done() ? "unbalanced '<': expected '>'" : "expected ',' or '>'");
  p.expect('>');
  if (!p.done()) p.fail("trailing characters after '>'");
  return Presentation(std::move(names), std::move(relators));
}

std::string print_letters(std::span<const Letter> letters, std::span<const std::string> names) {
  if (letters.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < letters.size();) {
    std::size_t j = i;
    while (j < letters.size() && letters[j] == letters[i]) ++j;
    long long k = static_cast<long long>(j - i) * letters[i].sign();
    if (!out.empty()) out += '*';
    out += names[letters[i].gen()];
    if (k != 1) out += "^" + std::to_string(k);
    i = j;
  }
  return out;
}

std::string print_word(const Word& w, std::span<const std::string> names) {
  return print_letters(w.letters(), names);
}

std::string print_presentation(const Presentation& p) {
  std::string out = "<";
  const auto& names = p.generator_names();
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += ',';
    out += names[i];
  }
  out += " |";
  for (std::size_t j = 0; j < p.num_relators(); ++j) {
    out += j ? ", " : " ";
    out += print_word(p.relator(j), names);
  }
  out += '>';
  return out;
}

std::vector<std::string> split_top_level(std::string_view text) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string current;
  for (char c : text) {
    if (c == '[' || c == '(') ++depth;
    if (c == ']' || c == ')') --depth;
    if (c == ',' && depth == 0) {
      parts.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  parts.push_back(current);
  return parts;
}

std::string strip_comments(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line, out;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t");
    if (first != std::string::npos && line[first] == '#') continue;
    out += line;
    out += '\n';
  }
  return out;
}

namespace {

std::string trim(std::string_view s) {
  auto a = s.find_first_not_of(" \t\r");
  if (a == std::string_view::npos) return {};
  auto b = s.find_last_not_of(" \t\r");
  return std::string(s.substr(a, b - a + 1));
}

LetterString parse_side(const std::string& side, const Presentation& p) {
  if (side.empty()) return {};
  return parse_letters(side, p.generator_names());
}

}  // namespace

RewritingSystem parse_rewriting_fixture(std::string_view text, const Presentation& p) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<Letter> order;
  std::vector<RewriteRule> rules;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto colon = t.find(':');
    if (colon == std::string::npos) throw ParseError(line_no, "expected 'order:' or 'rule:'");
    std::string key = trim(std::string_view(t).substr(0, colon));
    std::string body = trim(std::string_view(t).substr(colon + 1));
    try {
      if (key == "order") {
        std::istringstream letters(body);
        std::string tok;
        while (letters >> tok) {
          LetterString l = parse_letters(tok, p.generator_names());
          if (l.size() != 1) throw ParseError(0, "order entries must be single letters");
          order.push_back(l[0]);
        }
      } else if (key == "rule") {
        auto arrow = body.find("->");
        if (arrow == std::string::npos) throw ParseError(0, "expected '->'");
        rules.push_back({parse_side(trim(body.substr(0, arrow)), p),
                         parse_side(trim(body.substr(arrow + 2)), p), std::nullopt});
      } else {
        throw ParseError(0, "unknown key '" + key + "'");
      }
    } catch (const ParseError& e) {
      throw ParseError(line_no, std::string("fixture line: ") + e.what());
    }
  }
  if (order.empty()) order = RewritingSystem::default_order(p.num_generators());
  return RewritingSystem(p.num_generators(), std::move(order), std::move(rules));
}

std::string print_rewriting_fixture(const RewritingSystem& rs, const Presentation& p) {
  const auto& names = p.generator_names();
  std::string out = "order:";
  for (Letter l : rs.order()) out += " " + print_letters(std::span<const Letter>(&l, 1), names);
  out += '\n';
  for (const auto& r : rs.rules()) {
    out += "rule: " + print_letters(r.lhs, names) + " -> " + print_letters(r.rhs, names) + "\n";
  }
  return out;
}

}  // namespace freeiso::cli
