#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "jackhilb/linalg.hpp"
#include "jackhilb/partition.hpp"
#include "jackhilb/rational.hpp"

namespace jackhilb {

/// Which basis of the degree-n symmetric functions a SymPoly is written in.
///
///  - Monomial: m_lambda
///  - Power: unnormalized products p_{lambda_1} p_{lambda_2} ...
///  - PowerNormalized: the same products divided by z_lambda
///  - Jack: P_lambda^{(r)}, r = param > 0
struct BasisLabel {
  enum class Kind { Monomial, Power, PowerNormalized, Jack };

  Kind kind = Kind::Monomial;
  Rational param = 0;

  static BasisLabel monomial() { return {Kind::Monomial, 0}; }
  static BasisLabel power() { return {Kind::Power, 0}; }
  static BasisLabel power_normalized() { return {Kind::PowerNormalized, 0}; }
  static BasisLabel jack(const Rational& r) {
    if (r <= 0) throw std::domain_error("Jack parameter must be positive, got " + to_string(r));
    return {Kind::Jack, r};
  }

  friend bool operator==(const BasisLabel&, const BasisLabel&) = default;
};

/// Homogeneous symmetric function of a fixed degree with exact coefficients.
/// Zero coefficients are never stored; iteration follows enumerate order.
class SymPoly {
 public:
  using Terms = std::map<Partition, Rational, EnumerateOrder>;

  SymPoly(int degree, BasisLabel basis) : degree_(degree), basis_(std::move(basis)) {
    if (degree < 0) throw std::domain_error("SymPoly: negative degree");
  }

  static SymPoly basis_element(const Partition& lambda, BasisLabel basis) {
    SymPoly f(lambda.size(), std::move(basis));
    f.add(lambda, 1);
    return f;
  }

  int degree() const { return degree_; }
  const BasisLabel& basis() const { return basis_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Rational coeff(const Partition& lambda) const {
    auto it = terms_.find(lambda);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add(const Partition& lambda, const Rational& c) {
    if (lambda.size() != degree_)
      throw std::domain_error("SymPoly: term " + lambda.to_string() + " has wrong degree");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(lambda, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  SymPoly& operator+=(const SymPoly& other) {
    require_compatible(other);
    for (const auto& [lambda, c] : other.terms_) add(lambda, c);
    return *this;
  }
  SymPoly& operator-=(const SymPoly& other) {
    require_compatible(other);
    for (const auto& [lambda, c] : other.terms_) add(lambda, -c);
    return *this;
  }
  SymPoly& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [lambda, c] : terms_) c *= s;
    return *this;
  }

  friend SymPoly operator+(SymPoly a, const SymPoly& b) { return a += b; }
  friend SymPoly operator-(SymPoly a, const SymPoly& b) { return a -= b; }
  friend SymPoly operator*(SymPoly a, const Rational& s) { return a *= s; }
  friend SymPoly operator*(const Rational& s, SymPoly a) { return a *= s; }
  friend bool operator==(const SymPoly&, const SymPoly&) = default;

 private:
  void require_compatible(const SymPoly& other) const {
    if (other.degree_ != degree_ || !(other.basis_ == basis_))
      throw std::domain_error("SymPoly: incompatible degree or basis");
  }

  int degree_;
  BasisLabel basis_;
  Terms terms_;
};

/// p_i * m_lambda in the monomial basis. Each result partition adds i to one
/// distinct part value of lambda (a zero part included); its coefficient is
/// the multiplicity of the enlarged value in the result.
inline SymPoly p_times_m(int i, const Partition& lambda) {
  if (i < 1) throw std::domain_error("p_times_m: power index must be positive");
  SymPoly out(lambda.size() + i, BasisLabel::monomial());
  std::vector<int> values{0};
  for (int p : lambda.parts())
    if (values.back() != p) values.push_back(p);
  for (int v : values) {
    std::vector<int> parts = lambda.parts();
    if (v == 0) {
      parts.push_back(i);
    } else {
      auto it = std::find(parts.begin(), parts.end(), v);
      *it += i;
    }
    std::sort(parts.begin(), parts.end(), std::greater<>());
    Partition mu(std::move(parts));
    out.add(mu, mu.multiplicity(v + i));
  }
  return out;
}

/// p_i * f for f in the monomial basis.
inline SymPoly p_times(int i, const SymPoly& f) {
  if (f.basis().kind != BasisLabel::Kind::Monomial)
    throw std::domain_error("p_times: expects a monomial-basis input");
  SymPoly out(f.degree() + i, BasisLabel::monomial());
  for (const auto& [lambda, c] : f.terms()) out += p_times_m(i, lambda) * c;
  return out;
}

namespace detail {

/// Thread-safe memo table; fills are idempotent, so a race only wastes work.
template <class Key, class Value>
class MemoTable {
 public:
  template <class Compute>
  const Value& get(const Key& key, Compute&& compute) {
    {
      std::lock_guard lock(mutex_);
      if (auto it = table_.find(key); it != table_.end()) return *it->second;
    }
    auto value = std::make_unique<const Value>(compute());
    std::lock_guard lock(mutex_);
    auto [it, inserted] = table_.emplace(key, std::move(value));
    return *it->second;
  }

 private:
  std::mutex mutex_;
  std::map<Key, std::unique_ptr<const Value>> table_;
};

}  // namespace detail

/// Rows: unnormalized p_rho; columns: m_mu; both in enumerate order.
inline const Matrix& power_in_monomial(int n) {
  static detail::MemoTable<int, Matrix> cache;
  return cache.get(n, [n] {
    const auto& parts = enumerate_partitions(n);
    Matrix out(parts.size(), parts.size());
    for (std::size_t row = 0; row < parts.size(); ++row) {
      SymPoly f = SymPoly::basis_element(Partition{}, BasisLabel::monomial());
      for (int k : parts[row].parts()) f = p_times(k, f);
      for (const auto& [mu, c] : f.terms()) out(row, partition_index(mu)) = c;
    }
    return out;
  });
}

/// Rows: m_mu; columns: unnormalized p_rho.
inline const Matrix& monomial_in_power(int n) {
  static detail::MemoTable<int, Matrix> cache;
  return cache.get(n, [n] { return power_in_monomial(n).inverse(); });
}

/// Gram matrix <m_mu, m_nu>_r, where <p_rho, p_sigma>_r = delta z_rho r^{l(rho)}
/// on unnormalized power sums.
inline Matrix monomial_gram(int n, const Rational& r) {
  const auto& parts = enumerate_partitions(n);
  const Matrix& a = monomial_in_power(n);
  std::vector<Rational> weight(parts.size());
  for (std::size_t k = 0; k < parts.size(); ++k)
    weight[k] = z_factor(parts[k]) * pow(r, static_cast<unsigned>(parts[k].length()));
  Matrix g(parts.size(), parts.size());
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (std::size_t j = i; j < parts.size(); ++j) {
      Rational s = 0;
      for (std::size_t k = 0; k < parts.size(); ++k)
        if (a(i, k) != 0 && a(j, k) != 0) s += a(i, k) * a(j, k) * weight[k];
      g(i, j) = s;
      g(j, i) = s;
    }
  return g;
}

/// Rows: P_lambda^{(r)}; columns: m_mu. Each row is m_lambda plus the unique
/// combination of dominance-lower monomials orthogonal to all of them.
inline const Matrix& jack_in_monomial(int n, const Rational& r) {
  static detail::MemoTable<std::pair<int, Rational>, Matrix> cache;
  if (r <= 0) throw std::domain_error("Jack parameter must be positive, got " + to_string(r));
  return cache.get({n, r}, [n, &r] {
    const auto& parts = enumerate_partitions(n);
    const Matrix gram = monomial_gram(n, r);
    Matrix out(parts.size(), parts.size());
    for (std::size_t li = 0; li < parts.size(); ++li) {
      out(li, li) = 1;
      std::vector<std::size_t> lower;
      for (std::size_t mi = li + 1; mi < parts.size(); ++mi)
        if (dominance_leq(parts[mi], parts[li])) lower.push_back(mi);
      if (lower.empty()) continue;
      Matrix system(lower.size(), lower.size());
      Matrix rhs(lower.size(), 1);
      for (std::size_t a = 0; a < lower.size(); ++a) {
        for (std::size_t b = 0; b < lower.size(); ++b) system(a, b) = gram(lower[a], lower[b]);
        rhs(a, 0) = -gram(lower[a], li);
      }
      Matrix sol;
      try {
        sol = system.solve(rhs);
      } catch (const std::domain_error&) {
        throw std::logic_error("jack_in_monomial: singular Gram system for " +
                               parts[li].to_string());
      }
      for (std::size_t a = 0; a < lower.size(); ++a) out(li, lower[a]) = sol(a, 0);
    }
    return out;
  });
}

inline const Matrix& monomial_in_jack(int n, const Rational& r) {
  static detail::MemoTable<std::pair<int, Rational>, Matrix> cache;
  const Matrix& forward = jack_in_monomial(n, r);
  return cache.get({n, r}, [&forward] { return forward.inverse(); });
}

/// P_lambda^{(r)} expanded in monomials.
inline SymPoly jack_in_m(const Partition& lambda, const Rational& r) {
  const Matrix& j = jack_in_monomial(lambda.size(), r);
  const auto& parts = enumerate_partitions(lambda.size());
  const std::size_t row = partition_index(lambda);
  SymPoly out(lambda.size(), BasisLabel::monomial());
  for (std::size_t c = 0; c < parts.size(); ++c) out.add(parts[c], j(row, c));
  return out;
}

/// <P_lambda, P_lambda>_r in closed form: c'_lambda(1, r) / c_lambda(1, r).
inline Rational jack_norm(const Partition& lambda, const Rational& r) {
  if (r <= 0) throw std::domain_error("Jack parameter must be positive, got " + to_string(r));
  return c_prime_weight(lambda, 1, r) / c_weight(lambda, 1, r);
}

/// g^{(r)}: rows P_lambda^{(r)}, columns the normalized power sums p_mu / z_mu.
inline const Matrix& jack_transition_matrix(int n, const Rational& r) {
  static detail::MemoTable<std::pair<int, Rational>, Matrix> cache;
  if (r <= 0) throw std::domain_error("Jack parameter must be positive, got " + to_string(r));
  return cache.get({n, r}, [n, &r] {
    Matrix g = jack_in_monomial(n, r) * monomial_in_power(n);
    const auto& parts = enumerate_partitions(n);
    for (std::size_t c = 0; c < parts.size(); ++c) {
      const Rational z = z_factor(parts[c]);
      for (std::size_t row = 0; row < parts.size(); ++row) g(row, c) *= z;
    }
    return g;
  });
}

namespace detail {

inline std::vector<Rational> coefficient_row(const SymPoly& f) {
  std::vector<Rational> v(enumerate_partitions(f.degree()).size());
  for (const auto& [lambda, c] : f.terms()) v[partition_index(lambda)] = c;
  return v;
}

inline std::vector<Rational> row_times(const std::vector<Rational>& v, const Matrix& m) {
  std::vector<Rational> out(m.cols());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += v[i] * m(i, j);
  }
  return out;
}

inline void scale_by_z(std::vector<Rational>& v, int n, bool divide) {
  const auto& parts = enumerate_partitions(n);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Rational z = z_factor(parts[i]);
    if (divide)
      v[i] /= z;
    else
      v[i] *= z;
  }
}

inline std::vector<Rational> to_monomial_row(const SymPoly& f) {
  std::vector<Rational> v = coefficient_row(f);
  const int n = f.degree();
  switch (f.basis().kind) {
    case BasisLabel::Kind::Monomial:
      return v;
    case BasisLabel::Kind::PowerNormalized:
      scale_by_z(v, n, true);
      [[fallthrough]];
    case BasisLabel::Kind::Power:
      return row_times(v, power_in_monomial(n));
    case BasisLabel::Kind::Jack:
      return row_times(v, jack_in_monomial(n, f.basis().param));
  }
  throw std::logic_error("unknown basis kind");
}

inline std::vector<Rational> from_monomial_row(const std::vector<Rational>& v, int n,
                                               const BasisLabel& target) {
  switch (target.kind) {
    case BasisLabel::Kind::Monomial:
      return v;
    case BasisLabel::Kind::Power:
      return row_times(v, monomial_in_power(n));
    case BasisLabel::Kind::PowerNormalized: {
      auto out = row_times(v, monomial_in_power(n));
      scale_by_z(out, n, false);
      return out;
    }
    case BasisLabel::Kind::Jack:
      return row_times(v, monomial_in_jack(n, target.param));
  }
  throw std::logic_error("unknown basis kind");
}

}  // namespace detail

/// Exact change of basis.
inline SymPoly convert(const SymPoly& f, const BasisLabel& target) {
  if (target.kind == BasisLabel::Kind::Jack && target.param <= 0)
    throw std::domain_error("Jack parameter must be positive, got " + to_string(target.param));
  if (f.basis() == target) return f;
  const auto row = detail::from_monomial_row(detail::to_monomial_row(f), f.degree(), target);
  const auto& parts = enumerate_partitions(f.degree());
  SymPoly out(f.degree(), target);
  for (std::size_t i = 0; i < parts.size(); ++i) out.add(parts[i], row[i]);
  return out;
}

/// Deformed Hall product: <p_lambda, p_mu> = delta z_lambda r^{l(lambda)} on
/// unnormalized power sums (equivalently r^l / z on normalized ones).
inline Rational inner_product(const SymPoly& f, const SymPoly& g, const Rational& r) {
  if (f.degree() != g.degree()) throw std::domain_error("inner_product: degree mismatch");
  if (r <= 0) throw std::domain_error("inner_product: parameter must be positive");
  const SymPoly fp = convert(f, BasisLabel::power());
  const SymPoly gp = convert(g, BasisLabel::power());
  Rational sum = 0;
  for (const auto& [lambda, c] : fp.terms()) {
    const Rational d = gp.coeff(lambda);
    if (d != 0) sum += c * d * z_factor(lambda) * pow(r, static_cast<unsigned>(lambda.length()));
  }
  return sum;
}

}  // namespace jackhilb
