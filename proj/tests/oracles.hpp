#pragma once

// Independent reference computations used only by the tests. Nothing here
// calls into symfunc/fock/hilb; the only shared pieces are the Rational type,
// the Matrix solver and the Partition value type.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <vector>

#include "jackhilb/linalg.hpp"
#include "jackhilb/partition.hpp"
#include "jackhilb/rational.hpp"

namespace oracle {

using jackhilb::Matrix;
using jackhilb::Partition;
using jackhilb::Rational;

/// p(n) by Euler's pentagonal-number recurrence.
inline std::vector<std::int64_t> partition_counts(int max_n) {
  std::vector<std::int64_t> p(max_n + 1, 0);
  p[0] = 1;
  for (int n = 1; n <= max_n; ++n) {
    std::int64_t s = 0;
    for (int k = 1;; ++k) {
      const int g1 = k * (3 * k - 1) / 2;
      const int g2 = k * (3 * k + 1) / 2;
      if (g1 > n) break;
      const int sign = (k % 2 == 1) ? 1 : -1;
      s += sign * p[n - g1];
      if (g2 <= n) s += sign * p[n - g2];
    }
    p[n] = s;
  }
  return p;
}

/// Plain partition list by recursion, largest part first (any order).
inline std::vector<std::vector<int>> raw_partitions(int n, int max_part = -1) {
  if (max_part < 0) max_part = n;
  if (n == 0) return {{}};
  std::vector<std::vector<int>> out;
  for (int k = std::min(n, max_part); k >= 1; --k)
    for (auto rest : raw_partitions(n - k, k)) {
      rest.insert(rest.begin(), k);
      out.push_back(rest);
    }
  return out;
}

/// Product of hook lengths from the diagram drawn as a boolean grid.
inline Rational hook_product(const std::vector<int>& parts) {
  Rational prod = 1;
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (int j = 0; j < parts[i]; ++j) {
      int right = parts[i] - j - 1;
      int below = 0;
      for (std::size_t r = i + 1; r < parts.size(); ++r)
        if (parts[r] > j) ++below;
      prod *= right + below + 1;
    }
  return prod;
}

/// z_lambda = n! / |conjugacy class of cycle type lambda|, counting the class
/// by running through all permutations of n letters.
inline Rational centralizer_by_enumeration(const std::vector<int>& lambda) {
  int n = std::accumulate(lambda.begin(), lambda.end(), 0);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> target = lambda;
  std::int64_t count = 0, total = 0;
  do {
    ++total;
    std::vector<bool> seen(n, false);
    std::vector<int> cycles;
    for (int i = 0; i < n; ++i) {
      if (seen[i]) continue;
      int len = 0;
      for (int j = i; !seen[j]; j = perm[j]) {
        seen[j] = true;
        ++len;
      }
      cycles.push_back(len);
    }
    std::sort(cycles.rbegin(), cycles.rend());
    if (cycles == target) ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return Rational(total) / count;
}

/// Kostka number K_{lambda,mu}: semistandard tableaux of shape lambda and
/// content mu, by backtracking over cells in reading order.
inline std::int64_t kostka(const std::vector<int>& shape, const std::vector<int>& content) {
  std::vector<std::pair<int, int>> cells;
  for (std::size_t r = 0; r < shape.size(); ++r)
    for (int c = 0; c < shape[r]; ++c) cells.push_back({static_cast<int>(r), c});
  std::vector<std::vector<int>> t(shape.size());
  for (std::size_t r = 0; r < shape.size(); ++r) t[r].assign(shape[r], 0);
  std::vector<int> left = content;
  std::int64_t count = 0;
  std::function<void(std::size_t)> fill = [&](std::size_t idx) {
    if (idx == cells.size()) {
      ++count;
      return;
    }
    auto [r, c] = cells[idx];
    for (int v = 1; v <= static_cast<int>(content.size()); ++v) {
      if (left[v - 1] == 0) continue;
      if (c > 0 && t[r][c - 1] > v) continue;
      if (r > 0 && t[r - 1][c] >= v) continue;
      t[r][c] = v;
      --left[v - 1];
      fill(idx + 1);
      ++left[v - 1];
      t[r][c] = 0;
    }
  };
  fill(0);
  return count;
}

/// Multivariate polynomial over the integers: exponent vector -> coefficient.
using Poly = std::map<std::vector<int>, jackhilb::Integer>;

inline Poly power_sum_poly(int k, int vars) {
  Poly p;
  for (int i = 0; i < vars; ++i) {
    std::vector<int> e(vars, 0);
    e[i] = k;
    p[e] += 1;
  }
  return p;
}

inline Poly multiply(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      std::vector<int> e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out[e] += ca * cb;
    }
  return out;
}

/// Coefficient of m_mu in the unnormalized product p_rho, read off as the
/// coefficient of x^mu after expanding in |rho| variables.
inline Rational power_in_monomial_coeff(const std::vector<int>& rho, const std::vector<int>& mu) {
  const int n = std::accumulate(rho.begin(), rho.end(), 0);
  const int vars = std::max(n, 1);
  Poly p;
  p[std::vector<int>(vars, 0)] = 1;
  for (int k : rho) p = multiply(p, power_sum_poly(k, vars));
  std::vector<int> e(vars, 0);
  for (std::size_t i = 0; i < mu.size(); ++i) e[i] = mu[i];
  auto it = p.find(e);
  return it == p.end() ? Rational(0) : Rational(it->second);
}

inline Rational z_plain(const std::vector<int>& lambda) {
  Rational z = 1;
  std::map<int, int> m;
  for (int x : lambda) ++m[x];
  for (auto [i, k] : m)
    for (int j = 1; j <= k; ++j) z *= Rational(i * j);
  return z;
}

inline Rational rpow(const Rational& r, int e) {
  Rational out = 1;
  for (int i = 0; i < e; ++i) out *= r;
  return out;
}

/// Jack polynomials by Gram-Schmidt over the total reverse-lex order (not
/// restricted to dominance), computed from scratch in the power basis.
/// Returns rows = P_lambda in unnormalized power sums, in raw_partitions order.
struct JackData {
  std::vector<std::vector<int>> parts;
  std::vector<std::vector<Rational>> in_power;   // P_lambda -> p_rho coefficients
  std::vector<std::vector<Rational>> in_monomial;  // P_lambda -> m_mu coefficients
};

inline JackData jack_by_gram_schmidt(int n, const Rational& r) {
  JackData d;
  d.parts = raw_partitions(n);
  const std::size_t N = d.parts.size();
  Matrix pm(N, N);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) pm(i, j) = power_in_monomial_coeff(d.parts[i], d.parts[j]);
  const Matrix mp = pm.inverse();  // m in p
  std::vector<Rational> w(N);
  for (std::size_t k = 0; k < N; ++k) w[k] = z_plain(d.parts[k]) * rpow(r, d.parts[k].size());
  auto ip = [&](const std::vector<Rational>& a, const std::vector<Rational>& b) {
    Rational s = 0;
    for (std::size_t k = 0; k < N; ++k) s += a[k] * b[k] * w[k];
    return s;
  };
  std::vector<std::vector<Rational>> done_p(N), done_m(N);
  for (std::size_t li = N; li-- > 0;) {
    std::vector<Rational> fp(N), fm(N, 0);
    for (std::size_t k = 0; k < N; ++k) fp[k] = mp(li, k);
    fm[li] = 1;
    for (std::size_t mi = li + 1; mi < N; ++mi) {
      const Rational c = ip(fp, done_p[mi]) / ip(done_p[mi], done_p[mi]);
      for (std::size_t k = 0; k < N; ++k) {
        fp[k] -= c * done_p[mi][k];
        fm[k] -= c * done_m[mi][k];
      }
    }
    done_p[li] = fp;
    done_m[li] = fm;
  }
  d.in_power = done_p;
  d.in_monomial = done_m;
  return d;
}

/// c'_lambda(a, b) from an explicit grid walk.
inline Rational c_prime_grid(const std::vector<int>& parts, const Rational& a, const Rational& b) {
  Rational prod = 1;
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (int j = 0; j < parts[i]; ++j) {
      int arm = parts[i] - j - 1;
      int leg = 0;
      for (std::size_t r = i + 1; r < parts.size(); ++r)
        if (parts[r] > j) ++leg;
      prod *= a * leg + b * (arm + 1);
    }
  return prod;
}

inline Rational c_grid(const std::vector<int>& parts, const Rational& a, const Rational& b) {
  Rational prod = 1;
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (int j = 0; j < parts[i]; ++j) {
      int arm = parts[i] - j - 1;
      int leg = 0;
      for (std::size_t r = i + 1; r < parts.size(); ++r)
        if (parts[r] > j) ++leg;
      prod *= a * (leg + 1) + b * arm;
    }
  return prod;
}

/// Ordinary cup product on X(gamma)^[n] computed directly in the fixed-point
/// basis. Q^T monomials are built by multiplying the linear forms
///   p_{-k}(t) = -p_k(1) + p_k(2),  p_{-k}(Sigma0) = -p_k(1) + (1-gamma) p_k(2)
/// (localization of t*1 and [Sigma0] onto the two fixed points); fixed-point
/// coordinates come from pairing against Gram-Schmidt Jacks; the star product
/// is diagonal with eigenvalues c'_{l1}(-1,-1) c'_{l2}(gamma-1,1); the result
/// is pulled back by one dense solve against the Q^T vectors, then projected to
/// the summed ordinary degree.
class CupOracle {
 public:
  using Key = std::pair<std::vector<int>, std::vector<int>>;  // (l1, l2)

  CupOracle(int n, long gamma) : n_(n), gamma_(gamma) {
    for (int k = n; k >= 0; --k)
      for (auto& a : raw_partitions(k))
        for (auto& b : raw_partitions(n - k)) keys_.push_back({a, b});
    const Rational r2 = Rational(1) / (gamma - 1);
    for (int k = 0; k <= n; ++k) {
      jack1_.push_back(jack_by_gram_schmidt(k, 1));
      jack2_.push_back(jack_by_gram_schmidt(k, r2));
    }
    const std::size_t N = keys_.size();
    // Fixed-point vectors [l1,l2] in p(x)p coordinates, and their norms.
    fixed_.assign(N, std::vector<Rational>(N));
    for (std::size_t i = 0; i < N; ++i) {
      const auto& [l1, l2] = keys_[i];
      const auto& j1 = jack1_[size(l1)];
      const auto& j2 = jack2_[size(l2)];
      const auto row1 = j1.in_power[index(j1.parts, l1)];
      const auto row2 = j2.in_power[index(j2.parts, l2)];
      for (std::size_t a = 0; a < j1.parts.size(); ++a)
        for (std::size_t b = 0; b < j2.parts.size(); ++b)
          fixed_[i][key_index({j1.parts[a], j2.parts[b]})] += row1[a] * row2[b];
      eigen_.push_back(c_prime_grid(l1, -1, -1) * c_prime_grid(l2, Rational(gamma - 1), 1));
    }
    weight_.resize(N);
    for (std::size_t k = 0; k < N; ++k) {
      const auto& [a, b] = keys_[k];
      weight_[k] = z_plain(a) * z_plain(b) * rpow(r2, static_cast<int>(b.size()));
    }
    q_.resize(N);
    Matrix qm(N, N);
    for (std::size_t i = 0; i < N; ++i) {
      q_[i] = q_vector(keys_[i]);
      for (std::size_t k = 0; k < N; ++k) qm(i, k) = q_[i][k];
    }
    q_matrix_t_ = qm.transpose();
  }

  const std::vector<Key>& keys() const { return keys_; }

  static int degree(const Key& k) {
    return 2 * (size(k.first) - static_cast<int>(k.first.size())) + 2 * size(k.second);
  }

  /// Full star product of Q_a and Q_b in Q coordinates (indexed like keys()).
  std::vector<Rational> star(std::size_t a, std::size_t b) const {
    const std::size_t N = keys_.size();
    const auto fa = fixed_coords(q_[a]);
    const auto fb = fixed_coords(q_[b]);
    std::vector<Rational> prod(N);
    for (std::size_t i = 0; i < N; ++i) {
      const Rational c = fa[i] * fb[i] * eigen_[i];
      if (c == 0) continue;
      for (std::size_t k = 0; k < N; ++k) prod[k] += c * fixed_[i][k];
    }
    Matrix rhs(N, 1);
    for (std::size_t k = 0; k < N; ++k) rhs(k, 0) = prod[k];
    const Matrix sol = q_matrix_t_.solve(rhs);
    std::vector<Rational> out(N);
    for (std::size_t k = 0; k < N; ++k) out[k] = sol(k, 0);
    return out;
  }

  /// Graded projection of star(a, b).
  std::map<Key, Rational> cup(std::size_t a, std::size_t b) const {
    const int d = degree(keys_[a]) + degree(keys_[b]);
    std::map<Key, Rational> out;
    if (d > 2 * n_) return out;
    const auto full = star(a, b);
    for (std::size_t k = 0; k < keys_.size(); ++k)
      if (full[k] != 0 && degree(keys_[k]) == d) out[keys_[k]] = full[k];
    return out;
  }

 private:
  static int size(const std::vector<int>& p) { return std::accumulate(p.begin(), p.end(), 0); }

  static std::size_t index(const std::vector<std::vector<int>>& list, const std::vector<int>& p) {
    return static_cast<std::size_t>(std::find(list.begin(), list.end(), p) - list.begin());
  }

  std::size_t key_index(const Key& k) const {
    return static_cast<std::size_t>(std::find(keys_.begin(), keys_.end(), k) - keys_.begin());
  }

  std::vector<Rational> q_vector(const Key& key) const {
    std::map<Key, Rational> acc{{Key{}, Rational(1)}};
    auto push = [&acc](int k, const Rational& u, const Rational& v) {
      std::map<Key, Rational> next;
      for (const auto& [b, c] : acc) {
        Key x = b, y = b;
        x.first.push_back(k);
        std::sort(x.first.rbegin(), x.first.rend());
        y.second.push_back(k);
        std::sort(y.second.rbegin(), y.second.rend());
        next[x] += c * u;
        next[y] += c * v;
      }
      acc = std::move(next);
    };
    for (int k : key.first) push(k, -1, 1);
    for (int k : key.second) push(k, -1, Rational(1 - gamma_));
    std::vector<Rational> v(keys_.size());
    for (const auto& [k, c] : acc) v[key_index(k)] += c;
    return v;
  }

  /// <A, [mu]> / <[mu], [mu]> for every fixed point mu.
  std::vector<Rational> fixed_coords(const std::vector<Rational>& a) const {
    const std::size_t N = keys_.size();
    std::vector<Rational> out(N);
    for (std::size_t i = 0; i < N; ++i) {
      Rational num = 0, den = 0;
      for (std::size_t k = 0; k < N; ++k) {
        num += a[k] * fixed_[i][k] * weight_[k];
        den += fixed_[i][k] * fixed_[i][k] * weight_[k];
      }
      out[i] = num / den;
    }
    return out;
  }

  int n_;
  long gamma_;
  std::vector<Key> keys_;
  std::vector<JackData> jack1_, jack2_;
  std::vector<std::vector<Rational>> fixed_;
  std::vector<Rational> eigen_;
  std::vector<Rational> weight_;
  std::vector<std::vector<Rational>> q_;
  Matrix q_matrix_t_;
};

}  // namespace oracle
