#pragma once

// Canonical representation behind Expr: rational functions whose variables
// are atoms (coordinate symbols and elementary functions of canonical
// arguments). Polynomials are sparse, sorted by graded-lex order with the
// leading term first.

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spr/expr.hpp"

namespace spr::detail {

struct AtomData;
using Atom = std::shared_ptr<const AtomData>;

struct Factor {
  Atom atom;
  int exp;
};

// Sorted ascending by atom order; exponents positive.
using Monomial = std::vector<Factor>;

struct Term {
  Monomial mono;
  mpq_class coef;
};

class Poly {
 public:
  Poly() = default;
  explicit Poly(const mpq_class& c);
  static Poly atom(const Atom& a, int exp = 1);
  static Poly one() { return Poly(mpq_class(1)); }

  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] bool is_const() const;
  [[nodiscard]] bool is_one() const;
  [[nodiscard]] mpq_class const_value() const;
  [[nodiscard]] std::size_t size() const { return terms_.size(); }
  [[nodiscard]] const std::vector<Term>& terms() const { return terms_; }
  [[nodiscard]] const Term& lead() const { return terms_.front(); }

  // Builds from unsorted terms; combines duplicates and drops zeros.
  static Poly from_terms(std::vector<Term> terms);

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a);
  [[nodiscard]] Poly scaled(const mpq_class& q) const;
  [[nodiscard]] Poly times_monomial(const Monomial& m) const;

  [[nodiscard]] bool has_radicals() const;

  // Largest atom (in atom order) present.
  [[nodiscard]] Atom max_atom() const;
  [[nodiscard]] int degree_in(const AtomData& a) const;

  std::vector<Term>& mutable_terms() { return terms_; }

 private:
  std::vector<Term> terms_;
};

struct RatFunc {
  Poly num;
  Poly den = Poly::one();

  static RatFunc constant(const mpq_class& c) { return {Poly(c), Poly::one()}; }
  static RatFunc from_atom(const Atom& a) { return {Poly::atom(a), Poly::one()}; }
  [[nodiscard]] bool is_zero() const { return num.is_zero(); }
  [[nodiscard]] bool is_const() const { return num.is_const() && den.is_const(); }
};

struct AtomData {
  bool is_coord = true;
  int coord = 0;
  std::string name;
  Function fn = Function::Sin;
  std::shared_ptr<const RatFunc> arg;
};

int compare(const AtomData& a, const AtomData& b);
int compare(const Atom& a, const Atom& b);
int compare(const Monomial& a, const Monomial& b);
int compare(const Poly& a, const Poly& b);
int compare(const RatFunc& a, const RatFunc& b);

Atom coord_atom(int index, std::string name);

// Normalized quotient num/den: gcd removed, den with primitive integer
// coefficients and positive leading coefficient, radical constants reduced.
RatFunc normalize(Poly num, Poly den);

RatFunc add(const RatFunc& a, const RatFunc& b);
RatFunc sub(const RatFunc& a, const RatFunc& b);
RatFunc mul(const RatFunc& a, const RatFunc& b);
RatFunc div(const RatFunc& a, const RatFunc& b);
RatFunc neg(const RatFunc& a);
RatFunc pow(const RatFunc& a, int k);

RatFunc make_function(Function f, const RatFunc& arg);

RatFunc derivative(const RatFunc& e, int coord);
bool depends_on(const RatFunc& e, int coord);
RatFunc substitute(const RatFunc& e, const std::vector<std::shared_ptr<const RatFunc>>& values);

Poly gcd(const Poly& a, const Poly& b);
// Primitive integer coefficients with positive leading coefficient.
Poly unit_normal(const Poly& p);
std::optional<Poly> divide_exact(const Poly& a, const Poly& b);

// Numeric evaluation. Throws EvalError on a vanishing denominator or a
// domain violation.
double evaluate(const RatFunc& e, const double* point, int dim);

// Printed form of a function atom, used in evaluation error messages.
std::string atom_text(const AtomData& a);

}  // namespace spr::detail
