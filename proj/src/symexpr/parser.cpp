#include <cctype>
#include <set>

#include "spr/expr.hpp"

namespace spr {

namespace {

class Parser {
 public:
  Parser(std::string_view text, const Chart& chart) : text_(text), chart_(chart) {}

  Expr run() {
    Expr e = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])) != 0) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr expr() {
    std::vector<Expr> terms{term()};
    while (true) {
      if (accept('+')) {
        terms.push_back(term());
      } else if (accept('-')) {
        terms.push_back(Expr::make_negation(term()));
      } else {
        break;
      }
    }
    return Expr::make_sum(std::move(terms));
  }

  Expr term() {
    Expr left = factor();
    while (true) {
      if (accept('*')) {
        Expr right = factor();
        if (left.kind() == Expr::Kind::Product) {
          auto f = left.children();
          f.push_back(right);
          left = Expr::make_product(std::move(f));
        } else {
          left = Expr::make_product({left, right});
        }
      } else if (accept('/')) {
        left = Expr::make_quotient(left, factor());
      } else {
        break;
      }
    }
    return left;
  }

  Expr factor() {
    if (accept('-')) return Expr::make_negation(factor());
    Expr b = base();
    if (accept('^')) {
      skip();
      const std::size_t at = pos_;
      bool negative = false;
      if (accept('-')) {
        negative = true;
      } else {
        accept('+');
      }
      skip();
      const std::string digits = integer();
      if (digits.empty()) fail("expected integer exponent");
      if (digits.size() > 9) fail("exponent too large");
      int k = std::stoi(digits);
      if (k == 0) {
        pos_ = at;
        fail("zero exponent");
      }
      b = Expr::make_power(b, negative ? -k : k);
    }
    return b;
  }

  std::string integer() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])) != 0) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  Expr base() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) != 0) return Expr::rational(integer());
    if (std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) != 0 || text_[pos_] == '_')) {
        ++pos_;
      }
      const std::string name(text_.substr(start, pos_ - start));
      skip();
      if (pos_ < text_.size() && text_[pos_] == '(') {
        const auto f = function_from_name(name);
        if (!f) {
          pos_ = start;
          fail("unknown function '" + name + "'");
        }
        ++pos_;
        Expr arg = expr();
        if (!accept(')')) fail("expected ')'");
        return Expr::apply(*f, arg);
      }
      const auto idx = chart_.index_of(name);
      if (!idx) {
        pos_ = start;
        fail("unknown identifier '" + name + "'");
      }
      return chart_.coord(*idx);
    }
    if (c == '(') {
      ++pos_;
      Expr e = expr();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  const Chart& chart_;
  std::size_t pos_ = 0;
};

bool valid_identifier(const std::string& s) {
  if (s.empty() || (std::isalpha(static_cast<unsigned char>(s[0])) == 0 && s[0] != '_')) return false;
  for (char c : s) {
    if (std::isalnum(static_cast<unsigned char>(c)) == 0 && c != '_') return false;
  }
  return !function_from_name(s).has_value();
}

}  // namespace

Chart::Chart(std::vector<std::string> names, std::vector<Interval> domain, std::vector<Expr> excluded)
    : names_(std::move(names)), domain_(std::move(domain)), excluded_(std::move(excluded)) {
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (!valid_identifier(n)) throw ConfigurationError("invalid coordinate name '" + n + "'");
    if (!seen.insert(n).second) throw ConfigurationError("duplicate coordinate name '" + n + "'");
  }
  if (domain_.empty()) domain_.assign(names_.size(), Interval{});
  if (domain_.size() != names_.size()) throw ConfigurationError("sample domain size does not match chart");
  for (const auto& iv : domain_) {
    if (!(iv.lo < iv.hi)) throw ConfigurationError("degenerate sample interval");
  }
}

Expr Chart::coord(int i) const {
  if (i < 0 || i >= dim()) throw std::out_of_range("coordinate index out of range");
  return Expr::symbol(i, names_[static_cast<std::size_t>(i)]);
}

std::optional<int> Chart::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<int>(i);
  }
  return std::nullopt;
}

Expr Chart::parse(std::string_view text) const { return spr::parse(text, *this); }

Expr parse(std::string_view text, const Chart& chart) { return Parser(text, chart).run(); }

}  // namespace spr
