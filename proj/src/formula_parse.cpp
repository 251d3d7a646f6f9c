#include <cctype>

#include "qctl/errors.hpp"
#include "qctl/formula.hpp"

namespace qctl {

namespace {

// Recursive descent over raw characters. Precedence, loosest first:
//   <->  (left)   ->  (right)   |   &   unary
class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  FormulaPtr parse() {
    FormulaPtr f = parse_iff();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, 0, pos_ + 1); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

  bool at_symbol(std::string_view sym) {
    skip_ws();
    return text_.substr(pos_, sym.size()) == sym;
  }

  bool accept(std::string_view sym) {
    if (!at_symbol(sym)) return false;
    pos_ += sym.size();
    return true;
  }

  void expect(std::string_view sym) {
    if (!accept(sym)) fail("expected '" + std::string(sym) + "'");
  }

  // Peeks the identifier at the cursor without consuming it.
  std::string_view peek_ident() {
    skip_ws();
    std::size_t end = pos_;
    while (end < text_.size() && ident_char(text_[end])) ++end;
    return text_.substr(pos_, end - pos_);
  }

  std::string ident() {
    auto id = peek_ident();
    if (id.empty()) fail("expected proposition");
    pos_ += id.size();
    return std::string(id);
  }

  int number() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a natural number");
    if (pos_ - start > 6) fail("count too large");
    return std::stoi(std::string(text_.substr(start, pos_ - start)));
  }

  // Next non-blank character after an identifier-like prefix of length n.
  char after(std::size_t n) {
    std::size_t p = pos_ + n;
    while (p < text_.size() && std::isspace(static_cast<unsigned char>(text_[p]))) ++p;
    return p < text_.size() ? text_[p] : '\0';
  }

  FormulaPtr parse_iff() {
    FormulaPtr lhs = parse_implies();
    while (accept("<->")) lhs = fml::iff(lhs, parse_implies());
    return lhs;
  }

  FormulaPtr parse_implies() {
    FormulaPtr lhs = parse_or();
    if (accept("->")) return fml::implies(lhs, parse_implies());
    return lhs;
  }

  FormulaPtr parse_or() {
    FormulaPtr lhs = parse_and();
    while (accept("|")) lhs = fml::disj(lhs, parse_and());
    return lhs;
  }

  FormulaPtr parse_and() {
    FormulaPtr lhs = parse_unary();
    while (accept("&")) lhs = fml::conj(lhs, parse_unary());
    return lhs;
  }

  FormulaPtr parse_until(bool existential) {
    FormulaPtr lhs = parse_iff();
    skip_ws();
    auto kw = peek_ident();
    if (kw != "U" && kw != "W") fail("expected 'U' or 'W'");
    pos_ += 1;
    FormulaPtr rhs = parse_iff();
    expect("]");
    if (kw == "U") return existential ? fml::eu(lhs, rhs) : fml::au(lhs, rhs);
    return existential ? fml::ew(lhs, rhs) : fml::aw(lhs, rhs);
  }

  FormulaPtr parse_quantifier(Op op) {
    std::string p = ident();
    expect(".");
    return fml::quantifier(op, std::move(p), parse_unary());
  }

  FormulaPtr parse_unary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of formula");
    if (accept("!")) return fml::neg(parse_unary());
    if (accept("(")) {
      FormulaPtr f = parse_iff();
      expect(")");
      return f;
    }

    auto id = peek_ident();
    if (id.empty()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");

    if ((id == "E" || id == "A") && after(1) == '[') {
      pos_ += 1;
      expect("[");
      return parse_until(id == "E");
    }
    if (id == "E" && (after(1) == '=' || after(1) == '>')) {
      pos_ += 1;
      return parse_counting();
    }

    static const std::pair<std::string_view, FormulaPtr (*)(FormulaPtr)> modal[] = {
        {"EX", fml::ex}, {"AX", fml::ax}, {"EF", fml::ef}, {"AF", fml::af}, {"EG", fml::eg}, {"AG", fml::ag},
    };
    for (auto [kw, build] : modal) {
      if (id == kw) {
        pos_ += id.size();
        return build(parse_unary());
      }
    }

    if (id == "exists" || id == "forall" || id == "exists1" || id == "forall1") {
      pos_ += id.size();
      Op op = id == "exists" ? Op::Exists : id == "forall" ? Op::Forall : id == "exists1" ? Op::Exists1 : Op::Forall1;
      return parse_quantifier(op);
    }
    if (id == "true") {
      pos_ += id.size();
      return fml::top();
    }
    if (id == "false") {
      pos_ += id.size();
      return fml::bottom();
    }
    if (id == "U" || id == "W") fail("reserved word '" + std::string(id) + "' used as proposition");
    pos_ += id.size();
    return fml::atom(std::string(id));
  }

  // Cursor just past the 'E' of E=1F, E=1X, E>=kX, E=kX.
  FormulaPtr parse_counting() {
    bool at_least = accept(">=");
    if (!at_least) expect("=");
    int k = number();
    skip_ws();
    if (!at_least && k == 1 && accept("F")) return fml::unique_f(parse_unary());
    expect("X");
    if (at_least) return fml::at_least_x(k, parse_unary());
    if (k == 1) return fml::unique_x(parse_unary());
    return fml::exactly_x(k, parse_unary());
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

FormulaPtr parse_formula(std::string_view text) { return Parser(text).parse(); }

}  // namespace qctl
