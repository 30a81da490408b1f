#include "folia/parse.hpp"

#include <algorithm>
#include <cctype>

#include "folia/error.hpp"

namespace folia {

bool is_grammar_variable(std::string_view name) {
  static const std::vector<std::string_view> kFixed = {"x", "y", "X", "Y", "Z", "x0", "x1", "x2"};
  if (std::find(kFixed.begin(), kFixed.end(), name) != kFixed.end()) return true;
  return name.size() == 2 && name[0] == 'z' && std::isdigit(static_cast<unsigned char>(name[1]));
}

VariableNames projective_names(std::size_t n) {
  if (n == 2) return {"X", "Y", "Z"};
  VariableNames out;
  for (std::size_t k = 0; k <= n; ++k) out.push_back("z" + std::to_string(k));
  return out;
}

VariableNames affine_names() { return {"x", "y"}; }
VariableNames local_names() { return {"x0", "x1", "x2"}; }

namespace {

enum class Tok { kNumber, kIdent, kPlus, kMinus, kStar, kCaret, kLParen, kRParen, kEnd };

struct Token {
  Tok kind;
  std::string text;
  std::size_t column;
};

class Lexer {
 public:
  Lexer(std::string_view text, std::size_t line) : text_(text), line_(line) { advance(); }

  const Token& peek() const { return current_; }
  Token take() {
    Token t = current_;
    advance();
    return t;
  }
  [[noreturn]] void fail(const std::string& msg, std::size_t column) const {
    throw ParseError("line " + std::to_string(line_) + ", column " + std::to_string(column) + ": " + msg,
                     line_, column);
  }

 private:
  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const std::size_t col = pos_ + 1;
    if (pos_ >= text_.size()) {
      current_ = {Tok::kEnd, "", col};
      return;
    }
    const char ch = text_[pos_];
    auto is_digit = [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; };
    if (is_digit(ch)) {
      std::size_t end = pos_;
      while (end < text_.size() && is_digit(text_[end])) ++end;
      if (end + 1 < text_.size() && text_[end] == '/' && is_digit(text_[end + 1])) {
        ++end;
        while (end < text_.size() && is_digit(text_[end])) ++end;
      }
      current_ = {Tok::kNumber, std::string(text_.substr(pos_, end - pos_)), col};
      pos_ = end;
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t end = pos_;
      while (end < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_')) {
        ++end;
      }
      current_ = {Tok::kIdent, std::string(text_.substr(pos_, end - pos_)), col};
      pos_ = end;
      return;
    }
    Tok kind;
    switch (ch) {
      case '+': kind = Tok::kPlus; break;
      case '-': kind = Tok::kMinus; break;
      case '*': kind = Tok::kStar; break;
      case '^': kind = Tok::kCaret; break;
      case '(': kind = Tok::kLParen; break;
      case ')': kind = Tok::kRParen; break;
      default:
        fail(std::string("unexpected character '") + ch + "'", col);
    }
    current_ = {kind, std::string(1, ch), col};
    ++pos_;
  }

  std::string_view text_;
  std::size_t line_;
  std::size_t pos_ = 0;
  Token current_{Tok::kEnd, "", 1};
};

class Parser {
 public:
  Parser(std::string_view text, const VariableNames& vars, std::size_t line)
      : lex_(text, line), vars_(vars) {}

  Lexer& lexer() { return lex_; }

  MultiPoly expression() {
    MultiPoly acc(vars_.size());
    bool negate = false;
    if (lex_.peek().kind == Tok::kPlus || lex_.peek().kind == Tok::kMinus) {
      negate = lex_.take().kind == Tok::kMinus;
    }
    acc = term();
    if (negate) acc = -acc;
    while (lex_.peek().kind == Tok::kPlus || lex_.peek().kind == Tok::kMinus) {
      // In a one-form, "+ <expr> dV" may follow; the caller handles that by
      // only calling expression() for a single coefficient.
      const bool minus = lex_.take().kind == Tok::kMinus;
      MultiPoly rhs = term();
      if (minus) {
        acc -= rhs;
      } else {
        acc += rhs;
      }
    }
    return acc;
  }

  bool starts_atom(const Token& t) const {
    return t.kind == Tok::kNumber || t.kind == Tok::kLParen ||
           (t.kind == Tok::kIdent && !is_differential(t.text));
  }

  bool is_differential(const std::string& name) const {
    if (name.size() < 2 || name[0] != 'd') return false;
    const std::string rest = name.substr(1);
    return std::find(vars_.begin(), vars_.end(), rest) != vars_.end();
  }

  std::size_t differential_index(const std::string& name) const {
    const std::string rest = name.substr(1);
    return static_cast<std::size_t>(std::find(vars_.begin(), vars_.end(), rest) - vars_.begin());
  }

  void reject_juxtaposition() {
    if (starts_atom(lex_.peek())) {
      lex_.fail("juxtaposition is not multiplication; insert '*'", lex_.peek().column);
    }
  }

 private:
  MultiPoly term() {
    MultiPoly acc = factor();
    reject_juxtaposition();
    while (lex_.peek().kind == Tok::kStar) {
      lex_.take();
      acc *= factor();
      reject_juxtaposition();
    }
    return acc;
  }

  MultiPoly factor() {
    if (lex_.peek().kind == Tok::kMinus) {
      lex_.take();
      return -factor();
    }
    MultiPoly base = atom();
    if (lex_.peek().kind == Tok::kCaret) {
      lex_.take();
      Token exp = lex_.take();
      if (exp.kind != Tok::kNumber || exp.text.find('/') != std::string::npos) {
        lex_.fail("exponent must be a non-negative integer literal", exp.column);
      }
      unsigned long k = 0;
      try {
        k = std::stoul(exp.text);
      } catch (const std::exception&) {
        lex_.fail("exponent out of range", exp.column);
      }
      if (k > 1000000UL) lex_.fail("exponent out of range", exp.column);
      base = pow(base, static_cast<unsigned>(k));
    }
    return base;
  }

  MultiPoly atom() {
    Token t = lex_.take();
    const std::size_t n = vars_.size();
    switch (t.kind) {
      case Tok::kNumber: {
        mpq_class q(t.text);
        if (q.get_den() == 0) lex_.fail("zero denominator in '" + t.text + "'", t.column);
        q.canonicalize();
        return MultiPoly::constant(n, GaussianRational(q));
      }
      case Tok::kIdent: {
        if (t.text == "i") return MultiPoly::constant(n, GaussianRational::i());
        auto it = std::find(vars_.begin(), vars_.end(), t.text);
        if (it == vars_.end()) {
          lex_.fail("unknown variable '" + t.text + "'", t.column);
        }
        return MultiPoly::variable(n, static_cast<std::size_t>(it - vars_.begin()));
      }
      case Tok::kLParen: {
        MultiPoly inner = expression();
        Token close = lex_.take();
        if (close.kind != Tok::kRParen) lex_.fail("expected ')'", close.column);
        return inner;
      }
      case Tok::kEnd:
        lex_.fail("unexpected end of expression", t.column);
      default:
        lex_.fail("unexpected '" + t.text + "'", t.column);
    }
  }

  Lexer lex_;
  const VariableNames& vars_;
};

void check_names(const VariableNames& vars) {
  for (const auto& v : vars) {
    if (!is_grammar_variable(v)) throw Error(ErrorCode::kParse, "variable name '" + v + "' is not in the grammar");
  }
}

}  // namespace

MultiPoly parse_polynomial(std::string_view text, const VariableNames& vars, std::size_t line) {
  check_names(vars);
  Parser parser(text, vars, line);
  MultiPoly p = parser.expression();
  const Token& rest = parser.lexer().peek();
  if (rest.kind != Tok::kEnd) parser.lexer().fail("unexpected '" + rest.text + "'", rest.column);
  return p;
}

std::vector<MultiPoly> parse_one_form(std::string_view text, const VariableNames& vars, std::size_t line) {
  check_names(vars);
  Parser parser(text, vars, line);
  Lexer& lex = parser.lexer();
  std::vector<MultiPoly> coeffs(vars.size(), MultiPoly(vars.size()));
  bool first = true;
  while (true) {
    bool negate = false;
    if (!first || lex.peek().kind == Tok::kPlus || lex.peek().kind == Tok::kMinus) {
      const Token sign = lex.take();
      if (sign.kind != Tok::kPlus && sign.kind != Tok::kMinus) lex.fail("expected '+' or '-'", sign.column);
      negate = sign.kind == Tok::kMinus;
    }
    first = false;
    MultiPoly coeff = MultiPoly::constant(vars.size(), 1);
    if (!(lex.peek().kind == Tok::kIdent && parser.is_differential(lex.peek().text))) {
      coeff = parser.expression();
    }
    const Token diff = lex.take();
    if (diff.kind != Tok::kIdent || !parser.is_differential(diff.text)) {
      lex.fail("expected a differential such as d" + vars.front(), diff.column);
    }
    if (negate) coeff = -coeff;
    coeffs[parser.differential_index(diff.text)] += coeff;
    if (lex.peek().kind == Tok::kEnd) break;
  }
  return coeffs;
}

std::string to_string(const MultiPoly& p, const VariableNames& vars) {
  if (vars.size() != p.nvars()) throw Error(ErrorCode::kArityMismatch, "to_string: name count mismatch");
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    std::string mono;
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (e[k] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += vars[k];
      if (e[k] > 1) mono += "^" + std::to_string(e[k]);
    }
    std::string term;
    if (mono.empty()) {
      term = to_string(c);
    } else if (c.is_one()) {
      term = mono;
    } else if (c == GaussianRational(-1)) {
      term = "-" + mono;
    } else {
      term = to_string(c) + "*" + mono;
    }
    if (first) {
      out = term;
    } else if (term.front() == '-') {
      out += " - " + term.substr(1);
    } else {
      out += " + " + term;
    }
    first = false;
  }
  return out;
}

std::string to_string(const MultiPoly& p) {
  VariableNames names;
  if (p.nvars() == 2) {
    names = affine_names();
  } else if (p.nvars() >= 1) {
    names = projective_names(p.nvars() - 1);
  }
  return to_string(p, names);
}

}  // namespace folia
