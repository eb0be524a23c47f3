#include <algorithm>
#include <cassert>

#include "canonical.hpp"

namespace spr::detail {

namespace {

int sign_of(int v) { return (v > 0) - (v < 0); }

bool is_const_radical(const AtomData& a) {
  return !a.is_coord && a.fn == Function::Sqrt && a.arg->is_const();
}

Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const int c = compare(a[i].atom, b[j].atom);
    if (c < 0) {
      out.push_back(a[i++]);
    } else if (c > 0) {
      out.push_back(b[j++]);
    } else {
      out.push_back({a[i].atom, a[i].exp + b[j].exp});
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  for (; j < b.size(); ++j) out.push_back(b[j]);
  return out;
}

// a / b when b divides a.
std::optional<Monomial> mono_div(const Monomial& a, const Monomial& b) {
  Monomial out;
  std::size_t i = 0, j = 0;
  while (j < b.size()) {
    if (i == a.size()) return std::nullopt;
    const int c = compare(a[i].atom, b[j].atom);
    if (c < 0) {
      out.push_back(a[i++]);
    } else if (c > 0) {
      return std::nullopt;
    } else {
      const int e = a[i].exp - b[j].exp;
      if (e < 0) return std::nullopt;
      if (e > 0) out.push_back({a[i].atom, e});
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  return out;
}

int total_degree(const Monomial& m) {
  int d = 0;
  for (const auto& f : m) d += f.exp;
  return d;
}

// n = s^2 * k with k squarefree (best effort beyond the trial bound).
std::pair<mpz_class, mpz_class> square_split(mpz_class n) {
  mpz_class s = 1, k = 1;
  for (unsigned long p = 2; p < 100000; ++p) {
    const mpz_class pp = mpz_class(p) * p;
    if (pp > n) break;
    while (n % pp == 0) {
      n /= pp;
      s *= p;
    }
    if (n % p == 0) {
      n /= p;
      k *= p;
    }
  }
  if (mpz_perfect_square_p(n.get_mpz_t()) != 0) {
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    s *= r;
  } else {
    k *= n;
  }
  return {s, k};
}

Atom radical_atom(const mpz_class& k) {
  auto a = std::make_shared<AtomData>();
  a->is_coord = false;
  a->fn = Function::Sqrt;
  a->arg = std::make_shared<const RatFunc>(RatFunc::constant(mpq_class(k)));
  return a;
}

// sqrt(k)^2 -> k and sqrt(a)*sqrt(b) -> sqrt(ab) for constant radicals.
Poly reduce_radicals(const Poly& p) {
  std::vector<Term> out;
  out.reserve(p.size());
  bool changed = false;
  for (const auto& t : p.terms()) {
    int count = 0;
    bool needs = false;
    for (const auto& f : t.mono) {
      if (is_const_radical(*f.atom)) {
        ++count;
        if (f.exp > 1) needs = true;
      }
    }
    if (!needs && count < 2) {
      out.push_back(t);
      continue;
    }
    changed = true;
    Monomial rest;
    mpz_class under = 1;
    mpq_class coef = t.coef;
    for (const auto& f : t.mono) {
      if (!is_const_radical(*f.atom)) {
        rest.push_back(f);
        continue;
      }
      const mpz_class k = f.atom->arg->num.const_value().get_num();
      mpz_class half;
      mpz_pow_ui(half.get_mpz_t(), k.get_mpz_t(), static_cast<unsigned long>(f.exp / 2));
      coef *= half;
      if (f.exp % 2 == 1) under *= k;
    }
    auto [s, k] = square_split(under);
    coef *= s;
    if (k != 1) rest = mono_mul(rest, Monomial{{radical_atom(k), 1}});
    out.push_back({std::move(rest), coef});
  }
  if (!changed) return p;
  return Poly::from_terms(std::move(out));
}

}  // namespace

int compare(const AtomData& a, const AtomData& b) {
  if (&a == &b) return 0;
  if (a.is_coord != b.is_coord) return a.is_coord ? -1 : 1;
  if (a.is_coord) return sign_of(a.coord - b.coord);
  if (a.fn != b.fn) return a.fn < b.fn ? -1 : 1;
  return compare(*a.arg, *b.arg);
}

int compare(const Atom& a, const Atom& b) {
  if (a == b) return 0;
  return compare(*a, *b);
}

// Graded lexicographic; larger atoms are more significant.
int compare(const Monomial& a, const Monomial& b) {
  const int da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db ? -1 : 1;
  auto i = a.rbegin();
  auto j = b.rbegin();
  for (; i != a.rend() && j != b.rend(); ++i, ++j) {
    const int c = compare(i->atom, j->atom);
    if (c != 0) return c;
    if (i->exp != j->exp) return i->exp < j->exp ? -1 : 1;
  }
  if (i != a.rend()) return 1;
  if (j != b.rend()) return -1;
  return 0;
}

int compare(const Poly& a, const Poly& b) {
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  const std::size_t n = std::min(ta.size(), tb.size());
  for (std::size_t i = 0; i < n; ++i) {
    const int c = compare(ta[i].mono, tb[i].mono);
    if (c != 0) return c;
    const int q = cmp(ta[i].coef, tb[i].coef);
    if (q != 0) return sign_of(q);
  }
  if (ta.size() != tb.size()) return ta.size() < tb.size() ? -1 : 1;
  return 0;
}

int compare(const RatFunc& a, const RatFunc& b) {
  const int c = compare(a.num, b.num);
  if (c != 0) return c;
  return compare(a.den, b.den);
}

Atom coord_atom(int index, std::string name) {
  auto a = std::make_shared<AtomData>();
  a->is_coord = true;
  a->coord = index;
  a->name = std::move(name);
  return a;
}

Poly::Poly(const mpq_class& c) {
  if (c != 0) terms_.push_back({{}, c});
}

Poly Poly::atom(const Atom& a, int exp) {
  Poly p;
  p.terms_.push_back({{{a, exp}}, mpq_class(1)});
  if (exp > 1 && is_const_radical(*a)) return reduce_radicals(p);
  return p;
}

bool Poly::is_const() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.empty()); }

bool Poly::is_one() const { return terms_.size() == 1 && terms_[0].mono.empty() && terms_[0].coef == 1; }

mpq_class Poly::const_value() const { return terms_.empty() ? mpq_class(0) : terms_[0].coef; }

Poly Poly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return compare(a.mono, b.mono) > 0; });
  Poly p;
  for (auto& t : terms) {
    if (!p.terms_.empty() && compare(p.terms_.back().mono, t.mono) == 0) {
      p.terms_.back().coef += t.coef;
    } else {
      if (!p.terms_.empty() && p.terms_.back().coef == 0) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && p.terms_.back().coef == 0) p.terms_.pop_back();
  return p;
}

Poly operator+(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  Poly out;
  auto& o = out.terms_;
  o.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const int c = compare(a.terms_[i].mono, b.terms_[j].mono);
    if (c > 0) {
      o.push_back(a.terms_[i++]);
    } else if (c < 0) {
      o.push_back(b.terms_[j++]);
    } else {
      mpq_class s = a.terms_[i].coef + b.terms_[j].coef;
      if (s != 0) o.push_back({a.terms_[i].mono, s});
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) o.push_back(a.terms_[i]);
  for (; j < b.size(); ++j) o.push_back(b.terms_[j]);
  return out;
}

Poly operator-(const Poly& a) {
  Poly out = a;
  for (auto& t : out.terms_) t.coef = -t.coef;
  return out;
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly Poly::scaled(const mpq_class& q) const {
  if (q == 0) return Poly();
  Poly out = *this;
  for (auto& t : out.terms_) t.coef *= q;
  return out;
}

Poly Poly::times_monomial(const Monomial& m) const {
  if (m.empty()) return *this;
  Poly out;
  out.terms_.reserve(size());
  for (const auto& t : terms_) out.terms_.push_back({mono_mul(t.mono, m), t.coef});
  if (has_radicals()) return reduce_radicals(out);
  return out;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  if (a.is_const()) return b.scaled(a.const_value());
  if (b.is_const()) return a.scaled(b.const_value());
  std::vector<Term> terms;
  terms.reserve(a.size() * b.size());
  for (const auto& ta : a.terms_) {
    for (const auto& tb : b.terms_) terms.push_back({mono_mul(ta.mono, tb.mono), ta.coef * tb.coef});
  }
  Poly p = Poly::from_terms(std::move(terms));
  if (a.has_radicals() && b.has_radicals()) return reduce_radicals(p);
  return p;
}

bool Poly::has_radicals() const {
  for (const auto& t : terms_) {
    for (const auto& f : t.mono) {
      if (is_const_radical(*f.atom)) return true;
    }
  }
  return false;
}

Atom Poly::max_atom() const {
  Atom best;
  for (const auto& t : terms_) {
    if (t.mono.empty()) continue;
    const Atom& a = t.mono.back().atom;
    if (!best || compare(a, best) > 0) best = a;
  }
  return best;
}

int Poly::degree_in(const AtomData& a) const {
  int d = 0;
  for (const auto& t : terms_) {
    for (const auto& f : t.mono) {
      if (compare(*f.atom, a) == 0) d = std::max(d, f.exp);
    }
  }
  return d;
}

std::optional<Poly> divide_exact(const Poly& a, const Poly& b) {
  assert(!b.is_zero());
  if (b.is_const()) return a.scaled(1 / b.const_value());
  Poly r = a;
  std::vector<Term> q;
  const Term& lb = b.lead();
  while (!r.is_zero()) {
    const Term& lr = r.lead();
    auto m = mono_div(lr.mono, lb.mono);
    if (!m) return std::nullopt;
    Term t{std::move(*m), lr.coef / lb.coef};
    Poly tp;
    tp.mutable_terms().push_back(t);
    r = r - tp * b;
    q.push_back(std::move(t));
  }
  return Poly::from_terms(std::move(q));
}

namespace {

Poly exact(const Poly& a, const Poly& b) {
  auto q = divide_exact(a, b);
  assert(q);
  return std::move(*q);
}

}  // namespace

Poly unit_normal(const Poly& p) {
  if (p.is_zero()) return p;
  mpz_class l = 1, g = 0;
  for (const auto& t : p.terms()) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coef.get_den_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coef.get_num_mpz_t());
  }
  mpq_class f(l, g);
  f.canonicalize();
  if (p.lead().coef < 0) f = -f;
  return p.scaled(f);
}

namespace {

// Coefficients of p as a univariate polynomial in atom x (index = degree).
std::vector<Poly> coefficients_in(const Poly& p, const Atom& x) {
  std::vector<std::vector<Term>> buckets;
  for (const auto& t : p.terms()) {
    int d = 0;
    Monomial rest;
    rest.reserve(t.mono.size());
    for (const auto& f : t.mono) {
      if (compare(f.atom, x) == 0) {
        d = f.exp;
      } else {
        rest.push_back(f);
      }
    }
    if (static_cast<int>(buckets.size()) <= d) buckets.resize(d + 1);
    buckets[d].push_back({std::move(rest), t.coef});
  }
  std::vector<Poly> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(Poly::from_terms(std::move(b)));
  return out;
}

Poly from_coefficients(const std::vector<Poly>& c, const Atom& x) {
  Poly out;
  for (std::size_t d = 0; d < c.size(); ++d) {
    if (c[d].is_zero()) continue;
    out = out + (d == 0 ? c[d] : c[d] * Poly::atom(x, static_cast<int>(d)));
  }
  return out;
}

void trim(std::vector<Poly>& c) {
  while (!c.empty() && c.back().is_zero()) c.pop_back();
}

Poly content(const std::vector<Poly>& c) {
  Poly g;
  for (const auto& p : c) {
    if (p.is_zero()) continue;
    g = g.is_zero() ? unit_normal(p) : gcd(g, p);
    if (g.is_one()) break;
  }
  return g;
}

// Pseudo-remainder of a by b (up to a nonzero factor).
std::vector<Poly> pseudo_remainder(std::vector<Poly> a, const std::vector<Poly>& b) {
  const std::size_t db = b.size() - 1;
  const Poly& lb = b.back();
  trim(a);
  while (!a.empty() && a.size() - 1 >= db) {
    const std::size_t shift = a.size() - 1 - db;
    const Poly la = a.back();
    for (auto& p : a) p = p * lb;
    for (std::size_t k = 0; k <= db; ++k) a[k + shift] = a[k + shift] - la * b[k];
    trim(a);
  }
  return a;
}

Poly monomial_gcd(const Poly& single, const Poly& other) {
  Monomial m = single.lead().mono;
  for (const auto& t : other.terms()) {
    Monomial kept;
    for (const auto& f : m) {
      int e = 0;
      for (const auto& g : t.mono) {
        if (compare(g.atom, f.atom) == 0) {
          e = g.exp;
          break;
        }
      }
      e = std::min(e, f.exp);
      if (e > 0) kept.push_back({f.atom, e});
    }
    m = std::move(kept);
    if (m.empty()) break;
  }
  Poly out;
  out.mutable_terms().push_back({std::move(m), mpq_class(1)});
  return out;
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return unit_normal(b);
  if (b.is_zero()) return unit_normal(a);
  if (a.is_const() || b.is_const()) return Poly::one();
  if (a.size() == 1) return monomial_gcd(a, b);
  if (b.size() == 1) return monomial_gcd(b, a);
  if (compare(a, b) == 0) return unit_normal(a);

  Atom x = a.max_atom();
  Atom xb = b.max_atom();
  if (compare(xb, x) > 0) x = xb;

  auto ua = coefficients_in(a, x);
  auto ub = coefficients_in(b, x);
  if (ua.size() == 1) return gcd(a, content(ub));
  if (ub.size() == 1) return gcd(content(ua), b);

  const Poly ca = content(ua);
  const Poly cb = content(ub);
  for (auto& p : ua) p = exact(p, ca);
  for (auto& p : ub) p = exact(p, cb);
  const Poly cg = gcd(ca, cb);
  if (ua.size() < ub.size()) std::swap(ua, ub);

  while (true) {
    auto r = pseudo_remainder(ua, ub);
    if (r.empty()) break;
    if (r.size() == 1) {
      ub = {Poly::one()};
      break;
    }
    const Poly cr = content(r);
    for (auto& p : r) p = exact(p, cr);
    ua = std::move(ub);
    ub = std::move(r);
  }
  const Poly cu = content(ub);
  for (auto& p : ub) p = exact(p, cu);
  return unit_normal(cg * from_coefficients(ub, x));
}

RatFunc normalize(Poly num, Poly den) {
  if (den.is_zero()) throw EvalError("division by zero", "0");
  if (num.is_zero()) return {Poly(), Poly::one()};
  if (den.is_const()) return {num.scaled(1 / den.const_value()), Poly::one()};

  // Rationalize constant radicals in a monomial denominator.
  if (den.size() == 1 && den.has_radicals()) {
    Monomial r;
    for (const auto& f : den.lead().mono) {
      if (is_const_radical(*f.atom) && f.exp % 2 == 1) r.push_back({f.atom, 1});
    }
    if (!r.empty()) {
      num = num.times_monomial(r);
      den = den.times_monomial(r);
      if (den.is_const()) return {num.scaled(1 / den.const_value()), Poly::one()};
    }
  }

  const Poly g = gcd(num, den);
  if (!g.is_one()) {
    num = exact(num, g);
    den = exact(den, g);
  }
  if (den.is_const()) return {num.scaled(1 / den.const_value()), Poly::one()};
  const Poly dn = unit_normal(den);
  const mpq_class f = dn.lead().coef / den.lead().coef;
  return {num.scaled(f), dn};
}

}  // namespace spr::detail
