#include <cmath>
#include <stdexcept>

#include "node.hpp"

namespace spr {

using detail::Node;
using detail::RatFunc;

namespace {

std::shared_ptr<Node> new_node(Expr::Kind k) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  return n;
}

Expr rational_node(const mpq_class& q) {
  auto n = new_node(Expr::Kind::Rational);
  n->value = q;
  n->canon = std::make_shared<const RatFunc>(RatFunc::constant(q));
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

const std::shared_ptr<const Node>& zero_node() {
  static const std::shared_ptr<const Node> z = [] {
    auto n = new_node(Expr::Kind::Rational);
    n->canon = std::make_shared<const RatFunc>();
    return std::shared_ptr<const Node>(std::move(n));
  }();
  return z;
}

Expr atom_tree(const detail::AtomData& a);

Expr poly_tree(const detail::Poly& p);

Expr tree_of(const RatFunc& r) {
  if (r.den.is_one()) return poly_tree(r.num);
  return Expr::make_quotient(poly_tree(r.num), poly_tree(r.den));
}

Expr term_tree(const detail::Term& t) {
  if (t.mono.empty()) return rational_node(t.coef);
  std::vector<Expr> factors;
  for (const auto& f : t.mono) {
    Expr a = atom_tree(*f.atom);
    factors.push_back(f.exp == 1 ? a : Expr::make_power(a, f.exp));
  }
  Expr body = factors.size() == 1 ? factors[0] : Expr::make_product(std::move(factors));
  if (t.coef == 1) return body;
  if (t.coef == -1) return Expr::make_negation(body);
  std::vector<Expr> all{rational_node(t.coef)};
  if (body.kind() == Expr::Kind::Product) {
    for (const auto& c : body.children()) all.push_back(c);
  } else {
    all.push_back(body);
  }
  return Expr::make_product(std::move(all));
}

Expr poly_tree(const detail::Poly& p) {
  if (p.is_zero()) return rational_node(mpq_class(0));
  if (p.size() == 1) return term_tree(p.lead());
  std::vector<Expr> terms;
  terms.reserve(p.size());
  for (const auto& t : p.terms()) terms.push_back(term_tree(t));
  return Expr::make_sum(std::move(terms));
}

Expr canonical_expr(const RatFunc& r) {
  Expr t = tree_of(r);
  auto n = std::make_shared<Node>(t.node());
  n->canon = std::make_shared<const RatFunc>(r);
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr atom_tree(const detail::AtomData& a) {
  if (a.is_coord) {
    auto n = new_node(Expr::Kind::Symbol);
    n->index = a.coord;
    n->name = a.name;
    n->canon = std::make_shared<const RatFunc>(
        RatFunc::from_atom(detail::coord_atom(a.coord, a.name)));
    return Expr(std::shared_ptr<const Node>(std::move(n)));
  }
  auto n = new_node(Expr::Kind::Apply);
  n->fn = a.fn;
  n->children.push_back(canonical_expr(*a.arg));
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

RatFunc to_canon(const Expr& e) {
  const Node& n = e.node();
  if (n.canon) return *n.canon;
  switch (n.kind) {
    case Expr::Kind::Rational:
      return RatFunc::constant(n.value);
    case Expr::Kind::Symbol:
      return RatFunc::from_atom(detail::coord_atom(n.index, n.name));
    case Expr::Kind::Negation:
      return detail::neg(to_canon(n.children[0]));
    case Expr::Kind::Sum: {
      RatFunc r;
      for (const auto& c : n.children) r = detail::add(r, to_canon(c));
      return r;
    }
    case Expr::Kind::Product: {
      RatFunc r = RatFunc::constant(1);
      for (const auto& c : n.children) r = detail::mul(r, to_canon(c));
      return r;
    }
    case Expr::Kind::Quotient: {
      const RatFunc d = to_canon(n.children[1]);
      if (d.is_zero()) throw EvalError("division by zero", print(n.children[1]));
      return detail::div(to_canon(n.children[0]), d);
    }
    case Expr::Kind::Power: {
      const RatFunc b = to_canon(n.children[0]);
      if (b.is_zero() && n.exponent < 0) throw EvalError("division by zero", print(e));
      return detail::pow(b, n.exponent);
    }
    case Expr::Kind::Apply:
      return detail::make_function(n.fn, to_canon(n.children[0]));
  }
  return {};
}

std::string rational_string(const mpq_class& q) {
  if (q.get_den() == 1) {
    if (q >= 0) return q.get_num().get_str();
    return "(" + q.get_num().get_str() + ")";
  }
  return "(" + q.get_num().get_str() + "/" + q.get_den().get_str() + ")";
}

double eval_tree(const Expr& e, std::span<const double> p) {
  const Node& n = e.node();
  if (n.canon) {
    try {
      return detail::evaluate(*n.canon, p.data(), static_cast<int>(p.size()));
    } catch (const EvalError& err) {
      if (err.subexpression == "denominator" && n.kind == Expr::Kind::Quotient) {
        throw EvalError("division by zero", print(n.children[1]));
      }
      throw;
    }
  }
  switch (n.kind) {
    case Expr::Kind::Rational:
      return n.value.get_d();
    case Expr::Kind::Symbol:
      if (n.index < 0 || static_cast<std::size_t>(n.index) >= p.size()) {
        throw EvalError("coordinate outside point", n.name);
      }
      return p[static_cast<std::size_t>(n.index)];
    case Expr::Kind::Negation:
      return -eval_tree(n.children[0], p);
    case Expr::Kind::Sum: {
      double s = 0.0;
      for (const auto& c : n.children) s += eval_tree(c, p);
      return s;
    }
    case Expr::Kind::Product: {
      double s = 1.0;
      for (const auto& c : n.children) s *= eval_tree(c, p);
      return s;
    }
    case Expr::Kind::Quotient: {
      const double d = eval_tree(n.children[1], p);
      if (d == 0.0) throw EvalError("division by zero", print(n.children[1]));
      return eval_tree(n.children[0], p) / d;
    }
    case Expr::Kind::Power: {
      const double b = eval_tree(n.children[0], p);
      if (b == 0.0 && n.exponent < 0) throw EvalError("division by zero", print(e));
      return std::pow(b, n.exponent);
    }
    case Expr::Kind::Apply: {
      const double u = eval_tree(n.children[0], p);
      switch (n.fn) {
        case Function::Sin: return std::sin(u);
        case Function::Cos: return std::cos(u);
        case Function::Sinh: return std::sinh(u);
        case Function::Cosh: return std::cosh(u);
        case Function::Exp: return std::exp(u);
        case Function::Ln:
          if (!(u > 0.0)) throw EvalError("ln of nonpositive argument", print(e));
          return std::log(u);
        case Function::Sqrt:
          if (u < 0.0) throw EvalError("sqrt of negative argument", print(e));
          return std::sqrt(u);
      }
    }
  }
  return 0.0;
}

}  // namespace

namespace detail {

std::shared_ptr<const RatFunc> canonical_of(const Expr& e) {
  if (e.node().canon) return e.node().canon;
  return std::make_shared<const RatFunc>(to_canon(e));
}

Expr from_canonical(RatFunc r) { return canonical_expr(r); }

std::string atom_text(const AtomData& a) { return print(atom_tree(a)); }

}  // namespace detail

std::string_view function_name(Function f) {
  switch (f) {
    case Function::Sin: return "sin";
    case Function::Cos: return "cos";
    case Function::Sinh: return "sinh";
    case Function::Cosh: return "cosh";
    case Function::Exp: return "exp";
    case Function::Ln: return "ln";
    case Function::Sqrt: return "sqrt";
  }
  return "?";
}

std::optional<Function> function_from_name(std::string_view name) {
  for (Function f : {Function::Sin, Function::Cos, Function::Sinh, Function::Cosh, Function::Exp,
                     Function::Ln, Function::Sqrt}) {
    if (function_name(f) == name) return f;
  }
  return std::nullopt;
}

Expr::Expr() : node_(zero_node()) {}
Expr::Expr(int value) : Expr(static_cast<long long>(value)) {}
Expr::Expr(long long value) {
  if (value == 0) {
    node_ = zero_node();
  } else {
    mpz_class z;
    mpz_set_si(z.get_mpz_t(), value);
    node_ = rational_node(mpq_class(z)).node_;
  }
}

Expr Expr::rational(long long num, long long den) {
  if (den == 0) throw EvalError("division by zero", std::to_string(num) + "/0");
  mpz_class n, d;
  mpz_set_si(n.get_mpz_t(), num);
  mpz_set_si(d.get_mpz_t(), den);
  mpq_class q(n, d);
  q.canonicalize();
  return rational_node(q);
}

Expr Expr::rational(std::string_view text) {
  mpq_class q;
  if (q.set_str(std::string(text), 10) != 0) throw ParseError("invalid rational '" + std::string(text) + "'", 0);
  if (q.get_den() == 0) throw EvalError("division by zero", std::string(text));
  q.canonicalize();
  return rational_node(q);
}

Expr Expr::symbol(int index, std::string name) {
  auto n = new_node(Kind::Symbol);
  n->index = index;
  n->name = name;
  n->canon = std::make_shared<const RatFunc>(RatFunc::from_atom(detail::coord_atom(index, std::move(name))));
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::apply(Function f, const Expr& arg) {
  auto n = new_node(Kind::Apply);
  n->fn = f;
  n->children.push_back(arg);
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::make_sum(std::vector<Expr> terms) {
  if (terms.empty()) return Expr();
  if (terms.size() == 1) return terms[0];
  auto n = new_node(Kind::Sum);
  n->children = std::move(terms);
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::make_product(std::vector<Expr> factors) {
  if (factors.empty()) return Expr(1);
  if (factors.size() == 1) return factors[0];
  auto n = new_node(Kind::Product);
  n->children = std::move(factors);
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::make_quotient(Expr num, Expr den) {
  if (den.kind() == Kind::Rational && den.node().value == 0) throw EvalError("division by zero", print(num) + "/0");
  auto n = new_node(Kind::Quotient);
  n->children = {std::move(num), std::move(den)};
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::make_power(Expr base, int exponent) {
  if (exponent == 0) throw std::invalid_argument("zero exponent");
  auto n = new_node(Kind::Power);
  n->exponent = exponent;
  n->children = {std::move(base)};
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::make_negation(Expr e) {
  auto n = new_node(Kind::Negation);
  n->children = {std::move(e)};
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr::Kind Expr::kind() const { return node_->kind; }
const std::vector<Expr>& Expr::children() const { return node_->children; }
int Expr::symbol_index() const { return node_->index; }
const std::string& Expr::symbol_name() const { return node_->name; }
Function Expr::function() const { return node_->fn; }
int Expr::exponent() const { return node_->exponent; }
std::string Expr::rational_text() const { return node_->value.get_str(); }

bool Expr::is_canonical() const { return node_->canon != nullptr; }

bool Expr::is_symbolic_zero() const { return node_->canon && node_->canon->is_zero(); }

std::optional<double> Expr::constant_value() const {
  const auto c = detail::canonical_of(*this);
  if (!c->is_const()) return std::nullopt;
  return c->num.const_value().get_d();
}

bool Expr::is_constant() const { return detail::canonical_of(*this)->is_const(); }

bool Expr::depends_on(int coord) const { return detail::depends_on(*detail::canonical_of(*this), coord); }

std::string Expr::str() const { return print(*this); }

Expr operator+(const Expr& a, const Expr& b) {
  return canonical_expr(detail::add(*detail::canonical_of(a), *detail::canonical_of(b)));
}

Expr operator-(const Expr& a, const Expr& b) {
  return canonical_expr(detail::sub(*detail::canonical_of(a), *detail::canonical_of(b)));
}

Expr operator*(const Expr& a, const Expr& b) {
  return canonical_expr(detail::mul(*detail::canonical_of(a), *detail::canonical_of(b)));
}

Expr operator/(const Expr& a, const Expr& b) {
  const auto d = detail::canonical_of(b);
  if (d->is_zero()) throw EvalError("division by zero", print(b));
  return canonical_expr(detail::div(*detail::canonical_of(a), *d));
}

Expr operator-(const Expr& a) { return canonical_expr(detail::neg(*detail::canonical_of(a))); }

bool identical(const Expr& a, const Expr& b) {
  const Node& x = a.node();
  const Node& y = b.node();
  if (&x == &y) return true;
  if (x.kind != y.kind || x.children.size() != y.children.size()) return false;
  switch (x.kind) {
    case Expr::Kind::Rational:
      if (x.value != y.value) return false;
      break;
    case Expr::Kind::Symbol:
      if (x.index != y.index) return false;
      break;
    case Expr::Kind::Power:
      if (x.exponent != y.exponent) return false;
      break;
    case Expr::Kind::Apply:
      if (x.fn != y.fn) return false;
      break;
    default:
      break;
  }
  for (std::size_t i = 0; i < x.children.size(); ++i) {
    if (!identical(x.children[i], y.children[i])) return false;
  }
  return true;
}

Expr pow(const Expr& base, int exponent) {
  const auto b = detail::canonical_of(base);
  if (b->is_zero() && exponent < 0) throw EvalError("division by zero", print(base));
  return canonical_expr(detail::pow(*b, exponent));
}

namespace {
Expr apply_canonical(Function f, const Expr& e) {
  return canonical_expr(detail::make_function(f, *detail::canonical_of(e)));
}
}  // namespace

Expr sin(const Expr& e) { return apply_canonical(Function::Sin, e); }
Expr cos(const Expr& e) { return apply_canonical(Function::Cos, e); }
Expr sinh(const Expr& e) { return apply_canonical(Function::Sinh, e); }
Expr cosh(const Expr& e) { return apply_canonical(Function::Cosh, e); }
Expr exp(const Expr& e) { return apply_canonical(Function::Exp, e); }
Expr ln(const Expr& e) { return apply_canonical(Function::Ln, e); }
Expr sqrt(const Expr& e) { return apply_canonical(Function::Sqrt, e); }

std::string print(const Expr& e) {
  const Node& n = e.node();
  switch (n.kind) {
    case Expr::Kind::Rational:
      return rational_string(n.value);
    case Expr::Kind::Symbol:
      return n.name;
    case Expr::Kind::Negation:
      return "(-" + print(n.children[0]) + ")";
    case Expr::Kind::Sum:
    case Expr::Kind::Product: {
      const char* sep = n.kind == Expr::Kind::Sum ? " + " : "*";
      std::string s = "(";
      for (std::size_t i = 0; i < n.children.size(); ++i) {
        if (i > 0) s += sep;
        s += print(n.children[i]);
      }
      return s + ")";
    }
    case Expr::Kind::Quotient:
      return "(" + print(n.children[0]) + "/" + print(n.children[1]) + ")";
    case Expr::Kind::Power:
      return "(" + print(n.children[0]) + "^" + std::to_string(n.exponent) + ")";
    case Expr::Kind::Apply:
      return std::string(function_name(n.fn)) + "(" + print(n.children[0]) + ")";
  }
  return "?";
}

Expr simplify(const Expr& e) {
  if (e.is_canonical()) return e;
  return canonical_expr(to_canon(e));
}

Expr differentiate(const Expr& e, int coord) {
  return canonical_expr(detail::derivative(*detail::canonical_of(e), coord));
}

double eval_at(const Expr& e, std::span<const double> point) {
  const double v = eval_tree(e, point);
  if (!std::isfinite(v)) throw EvalError("non-finite value", print(e));
  return v;
}

Expr substitute(const Expr& e, std::span<const Expr> values) {
  std::vector<std::shared_ptr<const RatFunc>> v;
  v.reserve(values.size());
  for (const auto& x : values) v.push_back(detail::canonical_of(x));
  return canonical_expr(detail::substitute(*detail::canonical_of(e), v));
}

}  // namespace spr
