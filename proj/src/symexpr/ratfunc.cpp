#include <cmath>
#include <unordered_map>

#include "canonical.hpp"

namespace spr::detail {

namespace {

bool has_radicals(const RatFunc& a) { return a.num.has_radicals() || a.den.has_radicals(); }

RatFunc inverse(const RatFunc& a) {
  if (a.is_zero()) throw EvalError("division by zero", "0");
  if (a.num.is_const()) return {a.den.scaled(1 / a.num.const_value()), Poly::one()};
  if (a.num.size() == 1 && a.num.has_radicals()) return normalize(a.den, a.num);
  const Poly n = unit_normal(a.num);
  const mpq_class f = n.lead().coef / a.num.lead().coef;
  return {a.den.scaled(f), n};
}

Poly exact(const Poly& a, const Poly& b) {
  if (b.is_one()) return a;
  return *divide_exact(a, b);
}

Atom function_atom(Function f, RatFunc arg) {
  auto a = std::make_shared<AtomData>();
  a->is_coord = false;
  a->fn = f;
  a->arg = std::make_shared<const RatFunc>(std::move(arg));
  return a;
}

bool negative_lead(const RatFunc& a) { return !a.is_zero() && a.num.lead().coef < 0; }

RatFunc exp_of_term(const Term& t) {
  // exp(c*m) with c = p/q written as exp(m/q)^p.
  const mpz_class p = t.coef.get_num();
  const mpz_class q = t.coef.get_den();
  Poly inner;
  inner.mutable_terms().push_back({t.mono, mpq_class(1, q)});
  if (!mpz_fits_sint_p(p.get_mpz_t()) || std::abs(p.get_si()) > 64) {
    return RatFunc::from_atom(function_atom(Function::Exp, {Poly::from_terms({t}), Poly::one()}));
  }
  const int k = static_cast<int>(p.get_si());
  const RatFunc base = RatFunc::from_atom(function_atom(Function::Exp, {inner, Poly::one()}));
  return pow(base, k);
}

}  // namespace

RatFunc add(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den.is_one() && b.den.is_one()) return {a.num + b.num, Poly::one()};
  if (compare(a.den, b.den) == 0) return normalize(a.num + b.num, a.den);
  if (has_radicals(a) || has_radicals(b)) return normalize(a.num * b.den + b.num * a.den, a.den * b.den);
  // Both operands are reduced, so a common factor of the sum can only divide gcd(a.den, b.den).
  const Poly g = gcd(a.den, b.den);
  const Poly ad = exact(a.den, g);
  const Poly bd = exact(b.den, g);
  Poly num = a.num * bd + b.num * ad;
  Poly den = ad * bd;
  if (!g.is_one()) {
    const Poly g2 = gcd(num, g);
    num = exact(num, g2);
    den = den * exact(g, g2);
  }
  if (num.is_zero()) return {};
  if (den.is_const()) return {num.scaled(1 / den.const_value()), Poly::one()};
  const Poly dn = unit_normal(den);
  const mpq_class f = dn.lead().coef / den.lead().coef;
  return {num.scaled(f), dn};
}

RatFunc neg(const RatFunc& a) { return {-a.num, a.den}; }

RatFunc sub(const RatFunc& a, const RatFunc& b) { return add(a, neg(b)); }

RatFunc mul(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.den.is_one() && b.den.is_one()) {
    Poly n = a.num * b.num;
    return {std::move(n), Poly::one()};
  }
  if (has_radicals(a) || has_radicals(b)) return normalize(a.num * b.num, a.den * b.den);
  const Poly g1 = gcd(a.num, b.den);
  const Poly g2 = gcd(b.num, a.den);
  Poly num = exact(a.num, g1) * exact(b.num, g2);
  Poly den = exact(a.den, g2) * exact(b.den, g1);
  if (den.is_const()) return {num.scaled(1 / den.const_value()), Poly::one()};
  return {std::move(num), std::move(den)};
}

RatFunc div(const RatFunc& a, const RatFunc& b) { return mul(a, inverse(b)); }

RatFunc pow(const RatFunc& a, int k) {
  if (k == 0) return RatFunc::constant(1);
  if (k < 0) return pow(inverse(a), -k);
  RatFunc result = RatFunc::constant(1);
  RatFunc base = a;
  while (k > 0) {
    if (k & 1) result = mul(result, base);
    k >>= 1;
    if (k > 0) base = mul(base, base);
  }
  return result;
}

RatFunc make_function(Function f, const RatFunc& arg) {
  switch (f) {
    case Function::Sin:
    case Function::Sinh:
      if (arg.is_zero()) return {};
      if (negative_lead(arg)) return neg(RatFunc::from_atom(function_atom(f, neg(arg))));
      return RatFunc::from_atom(function_atom(f, arg));
    case Function::Cos:
    case Function::Cosh:
      if (arg.is_zero()) return RatFunc::constant(1);
      if (negative_lead(arg)) return RatFunc::from_atom(function_atom(f, neg(arg)));
      return RatFunc::from_atom(function_atom(f, arg));
    case Function::Exp: {
      if (arg.is_zero()) return RatFunc::constant(1);
      if (arg.den.is_one()) {
        RatFunc out = RatFunc::constant(1);
        for (const auto& t : arg.num.terms()) out = mul(out, exp_of_term(t));
        return out;
      }
      if (negative_lead(arg)) return inverse(RatFunc::from_atom(function_atom(f, neg(arg))));
      return RatFunc::from_atom(function_atom(f, arg));
    }
    case Function::Ln:
      if (arg.is_const()) {
        const mpq_class v = arg.num.const_value();
        if (v <= 0) throw EvalError("ln of nonpositive constant", "ln(" + v.get_str() + ")");
        if (v == 1) return {};
      }
      if (arg.num.size() == 1 && arg.den.is_one() && arg.num.lead().coef == 1 &&
          arg.num.lead().mono.size() == 1 && arg.num.lead().mono[0].exp == 1) {
        const AtomData& inner = *arg.num.lead().mono[0].atom;
        if (!inner.is_coord && inner.fn == Function::Exp) return *inner.arg;
      }
      return RatFunc::from_atom(function_atom(f, arg));
    case Function::Sqrt: {
      if (arg.is_zero()) return {};
      if (arg.is_const()) {
        const mpq_class v = arg.num.const_value();
        if (v < 0) throw EvalError("sqrt of negative constant", "sqrt(" + v.get_str() + ")");
        const mpz_class prod = v.get_num() * v.get_den();
        mpz_class s = 1, k = 1, rest = prod;
        for (unsigned long p = 2; p < 100000 && mpz_class(p) * p <= rest; ++p) {
          while (rest % (p * p) == 0) {
            rest /= p * p;
            s *= p;
          }
          if (rest % p == 0) {
            rest /= p;
            k *= p;
          }
        }
        if (mpz_perfect_square_p(rest.get_mpz_t()) != 0) {
          mpz_class r;
          mpz_sqrt(r.get_mpz_t(), rest.get_mpz_t());
          s *= r;
        } else {
          k *= rest;
        }
        mpq_class factor(s, v.get_den());
        factor.canonicalize();
        if (k == 1) return RatFunc::constant(factor);
        RatFunc r = RatFunc::from_atom(function_atom(f, RatFunc::constant(mpq_class(k))));
        return {r.num.scaled(factor), Poly::one()};
      }
      return RatFunc::from_atom(function_atom(f, arg));
    }
  }
  return {};
}

namespace {

RatFunc atom_derivative(const AtomData& a, int coord) {
  if (a.is_coord) return RatFunc::constant(a.coord == coord ? 1 : 0);
  const RatFunc du = derivative(*a.arg, coord);
  if (du.is_zero()) return {};
  const RatFunc& u = *a.arg;
  switch (a.fn) {
    case Function::Sin:
      return mul(make_function(Function::Cos, u), du);
    case Function::Cos:
      return neg(mul(make_function(Function::Sin, u), du));
    case Function::Sinh:
      return mul(make_function(Function::Cosh, u), du);
    case Function::Cosh:
      return mul(make_function(Function::Sinh, u), du);
    case Function::Exp:
      return mul(make_function(Function::Exp, u), du);
    case Function::Ln:
      return div(du, u);
    case Function::Sqrt:
      return div(mul(make_function(Function::Sqrt, u), du), mul(RatFunc::constant(2), u));
  }
  return {};
}

bool atom_depends(const AtomData& a, int coord) {
  if (a.is_coord) return a.coord == coord;
  return depends_on(*a.arg, coord);
}

bool poly_depends(const Poly& p, int coord) {
  for (const auto& t : p.terms()) {
    for (const auto& f : t.mono) {
      if (atom_depends(*f.atom, coord)) return true;
    }
  }
  return false;
}

// d/dcoord of a polynomial in atoms, as a rational function.
RatFunc poly_derivative(const Poly& p, int coord) {
  std::vector<Atom> atoms;
  for (const auto& t : p.terms()) {
    for (const auto& f : t.mono) {
      bool seen = false;
      for (const auto& a : atoms) {
        if (compare(a, f.atom) == 0) {
          seen = true;
          break;
        }
      }
      if (!seen && atom_depends(*f.atom, coord)) atoms.push_back(f.atom);
    }
  }
  RatFunc out;
  for (const auto& a : atoms) {
    std::vector<Term> partial;
    for (const auto& t : p.terms()) {
      for (std::size_t i = 0; i < t.mono.size(); ++i) {
        if (compare(t.mono[i].atom, a) != 0) continue;
        Monomial m = t.mono;
        const int e = m[i].exp;
        if (e == 1) {
          m.erase(m.begin() + static_cast<std::ptrdiff_t>(i));
        } else {
          m[i].exp = e - 1;
        }
        partial.push_back({std::move(m), t.coef * e});
      }
    }
    RatFunc dp{Poly::from_terms(std::move(partial)), Poly::one()};
    out = add(out, mul(dp, atom_derivative(*a, coord)));
  }
  return out;
}

}  // namespace

RatFunc derivative(const RatFunc& e, int coord) {
  if (!depends_on(e, coord)) return {};
  const RatFunc dn = poly_derivative(e.num, coord);
  if (e.den.is_one()) return dn;
  const RatFunc dd = poly_derivative(e.den, coord);
  const RatFunc den{e.den, Poly::one()};
  const RatFunc num{e.num, Poly::one()};
  // (n/d)' = n'/d - n d'/d^2
  return sub(div(dn, den), div(mul(num, dd), mul(den, den)));
}

bool depends_on(const RatFunc& e, int coord) { return poly_depends(e.num, coord) || poly_depends(e.den, coord); }

namespace {

struct Substituter {
  const std::vector<std::shared_ptr<const RatFunc>>& values;
  std::unordered_map<const AtomData*, RatFunc> cache;

  RatFunc atom(const Atom& a) {
    if (a->is_coord) {
      const auto k = static_cast<std::size_t>(a->coord);
      if (k < values.size() && values[k]) return *values[k];
      return RatFunc::from_atom(a);
    }
    auto it = cache.find(a.get());
    if (it != cache.end()) return it->second;
    RatFunc r = make_function(a->fn, rat(*a->arg));
    cache.emplace(a.get(), r);
    return r;
  }

  RatFunc poly(const Poly& p) {
    RatFunc out;
    for (const auto& t : p.terms()) {
      RatFunc term = RatFunc::constant(t.coef);
      for (const auto& f : t.mono) term = mul(term, pow(atom(f.atom), f.exp));
      out = add(out, term);
    }
    return out;
  }

  RatFunc rat(const RatFunc& e) {
    if (e.den.is_one()) return poly(e.num);
    return div(poly(e.num), poly(e.den));
  }
};

struct Evaluator {
  const double* point;
  int dim;
  std::unordered_map<const AtomData*, double> cache;

  double atom(const AtomData& a) {
    if (a.is_coord) {
      if (a.coord < 0 || a.coord >= dim) throw EvalError("coordinate outside point", a.name);
      return point[a.coord];
    }
    auto it = cache.find(&a);
    if (it != cache.end()) return it->second;
    const double u = rat(*a.arg);
    double v = 0.0;
    switch (a.fn) {
      case Function::Sin: v = std::sin(u); break;
      case Function::Cos: v = std::cos(u); break;
      case Function::Sinh: v = std::sinh(u); break;
      case Function::Cosh: v = std::cosh(u); break;
      case Function::Exp: v = std::exp(u); break;
      case Function::Ln:
        if (!(u > 0.0)) throw EvalError("ln of nonpositive argument", atom_text(a));
        v = std::log(u);
        break;
      case Function::Sqrt:
        if (u < 0.0) throw EvalError("sqrt of negative argument", atom_text(a));
        v = std::sqrt(u);
        break;
    }
    if (!std::isfinite(v)) throw EvalError("non-finite value", atom_text(a));
    cache.emplace(&a, v);
    return v;
  }

  double poly(const Poly& p) {
    double s = 0.0;
    for (const auto& t : p.terms()) {
      double v = t.coef.get_d();
      for (const auto& f : t.mono) {
        const double b = atom(*f.atom);
        v *= f.exp == 1 ? b : std::pow(b, f.exp);
      }
      s += v;
    }
    return s;
  }

  double rat(const RatFunc& e) {
    const double n = poly(e.num);
    if (e.den.is_one()) return n;
    const double d = poly(e.den);
    if (d == 0.0 || !std::isfinite(d)) throw EvalError("division by zero", "denominator");
    return n / d;
  }
};

}  // namespace

RatFunc substitute(const RatFunc& e, const std::vector<std::shared_ptr<const RatFunc>>& values) {
  Substituter s{values, {}};
  return s.rat(e);
}

double evaluate(const RatFunc& e, const double* point, int dim) {
  Evaluator ev{point, dim, {}};
  const double v = ev.rat(e);
  if (!std::isfinite(v)) throw EvalError("non-finite value", "expression");
  return v;
}

}  // namespace spr::detail
