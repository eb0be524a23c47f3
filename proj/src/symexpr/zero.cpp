#include <cmath>
#include <random>

#include "node.hpp"

namespace spr {

std::string_view to_string(ZeroVerdict::Kind k) {
  switch (k) {
    case ZeroVerdict::Kind::SymbolicZero: return "symbolic_zero";
    case ZeroVerdict::Kind::NumericZero: return "numeric_zero";
    case ZeroVerdict::Kind::Nonzero: return "nonzero";
  }
  return "?";
}

ZeroTester::ZeroTester(const Chart& chart, SamplingPlan plan) : plan_(plan) {
  if (plan_.samples <= 0) throw ConfigurationError("sample count must be positive");
  std::mt19937_64 rng(plan_.seed);
  const int dim = chart.dim();
  std::vector<std::shared_ptr<const detail::RatFunc>> loci;
  for (const auto& e : chart.excluded()) loci.push_back(detail::canonical_of(e));

  const int budget = plan_.samples * 50;
  std::vector<double> p(static_cast<std::size_t>(dim));
  for (int attempt = 0; attempt < budget && static_cast<int>(points_.size()) < plan_.samples; ++attempt) {
    for (int k = 0; k < dim; ++k) {
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      const auto& iv = chart.domain()[static_cast<std::size_t>(k)];
      p[static_cast<std::size_t>(k)] = iv.lo + u * (iv.hi - iv.lo);
    }
    bool ok = true;
    for (const auto& l : loci) {
      try {
        if (std::abs(detail::evaluate(*l, p.data(), dim)) < 1e-6) ok = false;
      } catch (const EvalError&) {
        ok = false;
      }
      if (!ok) break;
    }
    if (ok) points_.push_back(p);
  }
  if (points_.empty()) throw ConfigurationError("every sample point hits an excluded locus");
}

ZeroVerdict ZeroTester::operator()(const Expr& e) const {
  ZeroVerdict v;
  const auto c = detail::canonical_of(e);
  if (c->is_zero()) return v;
  if (c->is_const()) {
    v.kind = ZeroVerdict::Kind::Nonzero;
    v.max_abs = std::abs(c->num.const_value().get_d());
    v.witness_point = points_.empty() ? std::vector<double>{} : points_.front();
    v.witness_value = c->num.const_value().get_d();
    v.samples_used = 0;
    return v;
  }
  v.kind = ZeroVerdict::Kind::NumericZero;
  for (const auto& p : points_) {
    double val = 0.0;
    try {
      val = detail::evaluate(*c, p.data(), static_cast<int>(p.size()));
    } catch (const EvalError&) {
      continue;
    }
    ++v.samples_used;
    if (std::abs(val) > v.max_abs || v.witness_point.empty()) {
      if (std::abs(val) >= v.max_abs) {
        v.max_abs = std::abs(val);
        v.witness_point = p;
        v.witness_value = val;
      }
    }
  }
  if (v.samples_used == 0) throw ConfigurationError("expression undefined at every sample point: " + print(e));
  if (v.max_abs > plan_.tolerance) {
    v.kind = ZeroVerdict::Kind::Nonzero;
  } else {
    v.witness_point.clear();
    v.witness_value = 0.0;
  }
  return v;
}

ZeroVerdict is_zero(const Expr& e, const Chart& chart, const SamplingPlan& plan) {
  return ZeroTester(chart, plan)(e);
}

}  // namespace spr
