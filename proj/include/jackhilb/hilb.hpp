#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <map>
#include <optional>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "jackhilb/fock.hpp"
#include "jackhilb/linalg.hpp"
#include "jackhilb/partition.hpp"
#include "jackhilb/rational.hpp"
#include "jackhilb/surface.hpp"
#include "jackhilb/symfunc.hpp"

namespace jackhilb {

// ---------------------------------------------------------------------------
// Fixed-point classes
// ---------------------------------------------------------------------------

/// Element of H^{2n}_T(X^[n]) in the distinguished fixed-point basis: [lambda]
/// on the plane (keys with empty second slot) or [l1, l2] on X(gamma).
class EquivClass {
 public:
  using Terms = std::map<Bipartition, Rational, BipartitionOrder>;

  EquivClass(SurfaceModel model, int n) : model_(std::move(model)), n_(n) {
    if (n < 0) throw std::domain_error("EquivClass: negative degree");
  }

  static EquivClass basis_element(const SurfaceModel& model, const Bipartition& key) {
    EquivClass a(model, key.total());
    a.add(key, 1);
    return a;
  }
  static EquivClass basis_element(const SurfaceModel& model, const Partition& lambda) {
    return basis_element(model, Bipartition{lambda, {}});
  }

  const SurfaceModel& model() const { return model_; }
  int n() const { return n_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Rational coeff(const Bipartition& key) const {
    auto it = terms_.find(key);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add(const Bipartition& key, const Rational& c) {
    if (key.total() != n_)
      throw std::domain_error("EquivClass: key " + key.to_string() + " not of size " +
                              std::to_string(n_));
    if (model_.is_plane() && !key.second.empty())
      throw std::domain_error("EquivClass: plane classes are indexed by partitions");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(key, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  EquivClass& operator+=(const EquivClass& o) {
    require_compatible(o);
    for (const auto& [k, c] : o.terms_) add(k, c);
    return *this;
  }
  EquivClass& operator-=(const EquivClass& o) {
    require_compatible(o);
    for (const auto& [k, c] : o.terms_) add(k, -c);
    return *this;
  }
  EquivClass& operator*=(const Rational& s) {
    if (s == 0) terms_.clear();
    for (auto& [k, c] : terms_) c *= s;
    return *this;
  }

  friend EquivClass operator+(EquivClass a, const EquivClass& b) { return a += b; }
  friend EquivClass operator-(EquivClass a, const EquivClass& b) { return a -= b; }
  friend EquivClass operator*(EquivClass a, const Rational& s) { return a *= s; }
  friend EquivClass operator*(const Rational& s, EquivClass a) { return a *= s; }
  friend bool operator==(const EquivClass&, const EquivClass&) = default;

  void require_compatible(const EquivClass& o) const {
    require_same_model(model_, o.model_);
    if (o.n_ != n_)
      throw std::domain_error("EquivClass: degree mismatch (" + std::to_string(n_) + " vs " +
                              std::to_string(o.n_) + ")");
  }

 private:
  SurfaceModel model_;
  int n_;
  Terms terms_;
};

/// Fixed-point keys of H^{2n}_T(X^[n]) in canonical order.
inline std::vector<Bipartition> fixed_point_keys(const SurfaceModel& model, int n) {
  if (!model.is_plane()) return enumerate_bipartitions(n);
  std::vector<Bipartition> out;
  for (const Partition& p : enumerate_partitions(n)) out.push_back({p, {}});
  return out;
}

/// <[key], [key]>: c'/c at the plane weights, or the product over both charts
/// (the first chart contributes 1).
inline Rational fixed_point_norm(const SurfaceModel& model, const Bipartition& key) {
  auto [a1, b1] = model.chart_weights(1);
  Rational v = c_prime_weight(key.first, a1, b1) / c_weight(key.first, a1, b1);
  if (!model.is_plane()) {
    auto [a2, b2] = model.chart_weights(2);
    v *= c_prime_weight(key.second, a2, b2) / c_weight(key.second, a2, b2);
  }
  return v;
}

/// Eigenvalue of [key] under star-squaring: [key] * [key] = c' [key], with c'
/// taken at the chart weights (signs kept as they come).
inline Rational star_eigenvalue(const SurfaceModel& model, const Bipartition& key) {
  auto [a1, b1] = model.chart_weights(1);
  Rational v = c_prime_weight(key.first, a1, b1);
  if (!model.is_plane()) {
    auto [a2, b2] = model.chart_weights(2);
    v *= c_prime_weight(key.second, a2, b2);
  }
  return v;
}

inline Rational pairing(const EquivClass& a, const EquivClass& b) {
  a.require_compatible(b);
  Rational sum = 0;
  for (const auto& [key, c] : a.terms()) {
    const Rational d = b.coeff(key);
    if (d != 0) sum += c * d * fixed_point_norm(a.model(), key);
  }
  return sum;
}

/// The star product t^n (A * B) = A cup B, diagonal on fixed-point classes.
inline EquivClass star(const EquivClass& a, const EquivClass& b) {
  a.require_compatible(b);
  EquivClass out(a.model(), a.n());
  for (const auto& [key, c] : a.terms()) {
    const Rational d = b.coeff(key);
    if (d != 0) out.add(key, c * d * star_eigenvalue(a.model(), key));
  }
  return out;
}

/// Two-sided identity of the star product: sum of [key] / c'(key).
inline EquivClass unit(int n, const SurfaceModel& model) {
  EquivClass u(model, n);
  for (const Bipartition& key : fixed_point_keys(model, n))
    u.add(key, 1 / star_eigenvalue(model, key));
  return u;
}

// ---------------------------------------------------------------------------
// Isomorphisms with symmetric functions
// ---------------------------------------------------------------------------

/// Plane: [lambda] -> P_lambda^{(beta/alpha)}, extended linearly. Monomial basis.
inline SymPoly phi(const EquivClass& a) {
  if (!a.model().is_plane()) throw std::domain_error("phi: plane model only");
  const Rational r = a.model().chart_param(1);
  SymPoly out(a.n(), BasisLabel::monomial());
  for (const auto& [key, c] : a.terms()) out += jack_in_m(key.first, r) * c;
  return out;
}

inline EquivClass phi_inverse(const SymPoly& f, const SurfaceModel& model) {
  if (!model.is_plane()) throw std::domain_error("phi_inverse: plane model only");
  const SymPoly j = convert(f, BasisLabel::jack(model.chart_param(1)));
  EquivClass out(model, f.degree());
  for (const auto& [lambda, c] : j.terms()) out.add({lambda, {}}, c);
  return out;
}

/// phi^{-1}(m_lambda): the class of the closure of the locus of n points on
/// Sigma with multiplicities lambda.
inline EquivClass sigma_class(const Partition& lambda, const SurfaceModel& model) {
  return phi_inverse(SymPoly::basis_element(lambda, BasisLabel::monomial()), model);
}

/// Idempotent ring structure on symmetric functions transported from star:
/// (P_l / c'_l) o (P_m / c'_m) = delta (P_l / c'_l), c' at the plane weights.
inline SymPoly circ_product(const SymPoly& f, const SymPoly& g, const SurfaceModel& model) {
  if (!model.is_plane()) throw std::domain_error("circ_product: plane model only");
  if (f.degree() != g.degree()) throw std::domain_error("circ_product: degree mismatch");
  const BasisLabel jack = BasisLabel::jack(model.chart_param(1));
  const SymPoly fj = convert(f, jack);
  const SymPoly gj = convert(g, jack);
  auto [a, b] = model.chart_weights(1);
  SymPoly out(f.degree(), jack);
  for (const auto& [lambda, c] : fj.terms()) {
    const Rational d = gj.coeff(lambda);
    if (d != 0) out.add(lambda, c * d * c_prime_weight(lambda, a, b));
  }
  return convert(out, BasisLabel::monomial());
}

namespace detail {

/// Row of unnormalized power-sum coefficients of P_lambda^{(r)}.
inline std::vector<std::pair<Partition, Rational>> jack_power_terms(const Partition& lambda,
                                                                    const Rational& r) {
  const SymPoly p = convert(jack_in_m(lambda, r), BasisLabel::power());
  return {p.terms().begin(), p.terms().end()};
}

}  // namespace detail

/// Any model: the Fock-space image of a fixed-point class. On X(gamma),
/// [l1, l2] -> P_l1^{(1)} (x) P_l2^{(1/(gamma-1))}; on the plane this is phi.
inline FockState psi_phi(const EquivClass& a) {
  const SurfaceModel& model = a.model();
  FockState out(model, a.n());
  for (const auto& [key, c] : a.terms()) {
    const auto t1 = detail::jack_power_terms(key.first, model.chart_param(1));
    if (model.is_plane()) {
      for (const auto& [p1, c1] : t1) out.add({p1, {}}, c * c1);
      continue;
    }
    const auto t2 = detail::jack_power_terms(key.second, model.chart_param(2));
    for (const auto& [p1, c1] : t1)
      for (const auto& [p2, c2] : t2) out.add({p1, p2}, c * c1 * c2);
  }
  return out;
}

/// Inverse of psi_phi: expand each tensor factor in its Jack basis.
inline EquivClass psi_phi_inverse(const FockState& s) {
  const SurfaceModel& model = s.model();
  EquivClass out(model, s.degree());
  for (const auto& [key, c] : s.terms()) {
    const SymPoly j1 = convert(SymPoly::basis_element(key.first, BasisLabel::power()),
                               BasisLabel::jack(model.chart_param(1)));
    if (model.is_plane()) {
      for (const auto& [l1, d1] : j1.terms()) out.add({l1, {}}, c * d1);
      continue;
    }
    const SymPoly j2 = convert(SymPoly::basis_element(key.second, BasisLabel::power()),
                               BasisLabel::jack(model.chart_param(2)));
    for (const auto& [l1, d1] : j1.terms())
      for (const auto& [l2, d2] : j2.terms()) out.add({l1, l2}, c * d1 * d2);
  }
  return out;
}

/// Idempotent product on the Fock side: elements P_l1/c'_l1 (x) P_l2/c'_l2
/// (c' at the chart weights) are orthogonal idempotents.
inline FockState idempotent_product(const FockState& a, const FockState& b) {
  require_same_model(a.model(), b.model());
  if (a.degree() != b.degree()) throw std::domain_error("idempotent_product: degree mismatch");
  const EquivClass ja = psi_phi_inverse(a);
  const EquivClass jb = psi_phi_inverse(b);
  EquivClass prod(a.model(), a.degree());
  for (const auto& [key, c] : ja.terms()) {
    const Rational d = jb.coeff(key);
    if (d == 0) continue;
    auto [a1, b1] = a.model().chart_weights(1);
    Rational e = c_prime_weight(key.first, a1, b1);
    if (!a.model().is_plane()) {
      auto [a2, b2] = a.model().chart_weights(2);
      e *= c_prime_weight(key.second, a2, b2);
    }
    prod.add(key, c * d * e);
  }
  return psi_phi(prod);
}

// ---------------------------------------------------------------------------
// Heisenberg monomial bases and the ordinary cup product on X(gamma)^[n]
// ---------------------------------------------------------------------------

/// Q: products of p_{-k}(t) and p_{-k}([Sigma0]) on the vacuum.
/// R: products of p_{-k}([Sigma1]) and p_{-k}([Sigma2]) on the vacuum.
enum class HeisBasis { Q, R };

/// Cohomological degree of the ordinary class Q_{l1,l2}: p_{-k}(omega) adds
/// 2k - 2 + deg(omega), with deg 1_X = 0 and deg Sigma0 = 2.
inline int ordinary_degree(const Bipartition& key) {
  return 2 * (key.first.size() - key.first.length()) + 2 * key.second.size();
}

struct HeisMonomial {
  Bipartition key;
  HeisBasis basis = HeisBasis::Q;

  int ordinary_degree() const { return jackhilb::ordinary_degree(key); }
};

/// Linear combination of Heisenberg monomials of one basis in H^{2n}_T(X(gamma)^[n]).
class HeisCombination {
 public:
  using Terms = std::map<Bipartition, Rational, BipartitionOrder>;

  HeisCombination(SurfaceModel model, int n, HeisBasis basis)
      : model_(std::move(model)), n_(n), basis_(basis) {
    require_line_bundle(model_);
    if (n < 0) throw std::domain_error("HeisCombination: negative degree");
  }

  static HeisCombination monomial(const SurfaceModel& model, const HeisMonomial& m) {
    HeisCombination h(model, m.key.total(), m.basis);
    h.add(m.key, 1);
    return h;
  }

  const SurfaceModel& model() const { return model_; }
  int n() const { return n_; }
  HeisBasis basis() const { return basis_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Rational coeff(const Bipartition& key) const {
    auto it = terms_.find(key);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add(const Bipartition& key, const Rational& c) {
    if (key.total() != n_)
      throw std::domain_error("HeisCombination: key " + key.to_string() + " not of size " +
                              std::to_string(n_));
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(key, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  HeisCombination& operator+=(const HeisCombination& o) {
    require_compatible(o);
    for (const auto& [k, c] : o.terms_) add(k, c);
    return *this;
  }
  HeisCombination& operator*=(const Rational& s) {
    if (s == 0) terms_.clear();
    for (auto& [k, c] : terms_) c *= s;
    return *this;
  }
  friend HeisCombination operator+(HeisCombination a, const HeisCombination& b) { return a += b; }
  friend HeisCombination operator*(HeisCombination a, const Rational& s) { return a *= s; }
  friend bool operator==(const HeisCombination&, const HeisCombination&) = default;

  void require_compatible(const HeisCombination& o) const {
    require_same_model(model_, o.model_);
    if (o.n_ != n_) throw std::domain_error("HeisCombination: degree mismatch");
    if (o.basis_ != basis_) throw std::domain_error("HeisCombination: basis mismatch");
  }

 private:
  SurfaceModel model_;
  int n_;
  HeisBasis basis_;
  Terms terms_;
};

namespace detail {

/// Expands prod_{k in key.first} p_{-k}(u) prod_{k in key.second} p_{-k}(v)
/// where u, v are classes with coordinates (x, y) in some basis {e1, e2}; the
/// result is collected into monomials in p_{-k}(e1), p_{-k}(e2). Creation
/// operators commute, so only multisets of modes matter.
inline HeisCombination::Terms expand_linear_factors(const Bipartition& key,
                                                    const std::pair<Rational, Rational>& u,
                                                    const std::pair<Rational, Rational>& v) {
  HeisCombination::Terms acc{{Bipartition{}, Rational(1)}};
  auto push = [&acc](int k, const std::pair<Rational, Rational>& w) {
    HeisCombination::Terms next;
    for (const auto& [b, c] : acc) {
      if (w.first != 0) next[{b.first.with_part(k), b.second}] += c * w.first;
      if (w.second != 0) next[{b.first, b.second.with_part(k)}] += c * w.second;
    }
    std::erase_if(next, [](const auto& kv) { return kv.second == 0; });
    acc = std::move(next);
  };
  for (int k : key.first.parts()) push(k, u);
  for (int k : key.second.parts()) push(k, v);
  return acc;
}

inline std::pair<Rational, Rational> coords(const CurveClass& c) { return {c.first, c.second}; }

inline const Matrix& jack_transition_inverse(int n, const Rational& r) {
  static MemoTable<std::pair<int, Rational>, Matrix> cache;
  const Matrix& g = jack_transition_matrix(n, r);
  return cache.get({n, r}, [&g] { return g.inverse(); });
}

}  // namespace detail

/// M1: rewrite Q-basis monomials in the R basis through
///   t*1 = -[Sigma1] + [Sigma2],  [Sigma0] = -[Sigma1] + (1-gamma)[Sigma2].
inline HeisCombination m1_expand(const HeisCombination& q) {
  if (q.basis() != HeisBasis::Q) throw std::domain_error("m1_expand: expects Q-basis input");
  const long g = q.model().gamma();
  const auto t = curve_decompose(CurveClass::t_sigma0(g, 1, 0), CurveClass::Basis::Fiber);
  const auto s0 = curve_decompose(CurveClass::t_sigma0(g, 0, 1), CurveClass::Basis::Fiber);
  HeisCombination out(q.model(), q.n(), HeisBasis::R);
  for (const auto& [key, c] : q.terms())
    for (const auto& [k2, d] : detail::expand_linear_factors(key, detail::coords(t),
                                                             detail::coords(s0)))
      out.add(k2, c * d);
  return out;
}

inline HeisCombination m1_expand(const HeisMonomial& q, const SurfaceModel& model) {
  return m1_expand(HeisCombination::monomial(model, q));
}

/// M1 inverse: fibers back in terms of t*1 and [Sigma0].
inline HeisCombination m1_inverse(const HeisCombination& r) {
  if (r.basis() != HeisBasis::R) throw std::domain_error("m1_inverse: expects R-basis input");
  const long g = r.model().gamma();
  const auto s1 = curve_decompose(CurveClass::fiber(g, 1, 0), CurveClass::Basis::TSigma0);
  const auto s2 = curve_decompose(CurveClass::fiber(g, 0, 1), CurveClass::Basis::TSigma0);
  HeisCombination out(r.model(), r.n(), HeisBasis::Q);
  for (const auto& [key, c] : r.terms())
    for (const auto& [k2, d] : detail::expand_linear_factors(key, detail::coords(s1),
                                                             detail::coords(s2)))
      out.add(k2, c * d);
  return out;
}

/// M2 = g^{(1)} (x) g^{(1/(gamma-1))}: R-basis vectors in fixed-point classes.
/// An unnormalized p_mu equals z_mu times the normalized one, which the
/// inverse transition matrix expands in Jack polynomials.
inline EquivClass m2_expand(const HeisCombination& r) {
  if (r.basis() != HeisBasis::R) throw std::domain_error("m2_expand: expects R-basis input");
  const SurfaceModel& model = r.model();
  const Rational r1 = model.chart_param(1);
  const Rational r2 = model.chart_param(2);
  EquivClass out(model, r.n());
  for (const auto& [key, c] : r.terms()) {
    const int n1 = key.first.size();
    const int n2 = key.second.size();
    const Matrix& inv1 = detail::jack_transition_inverse(n1, r1);
    const Matrix& inv2 = detail::jack_transition_inverse(n2, r2);
    const auto& parts1 = enumerate_partitions(n1);
    const auto& parts2 = enumerate_partitions(n2);
    const std::size_t i1 = partition_index(key.first);
    const std::size_t i2 = partition_index(key.second);
    const Rational scale = c * z_factor(key.first) * z_factor(key.second);
    for (std::size_t j1 = 0; j1 < parts1.size(); ++j1) {
      if (inv1(i1, j1) == 0) continue;
      for (std::size_t j2 = 0; j2 < parts2.size(); ++j2)
        out.add({parts1[j1], parts2[j2]}, scale * inv1(i1, j1) * inv2(i2, j2));
    }
  }
  return out;
}

/// M2 inverse: [n1, n2] = sum g1(n1, m1) / z_m1 * g2(n2, m2) / z_m2 * R_{m1,m2}.
inline HeisCombination m2_inverse(const EquivClass& a) {
  require_line_bundle(a.model());
  const SurfaceModel& model = a.model();
  HeisCombination out(model, a.n(), HeisBasis::R);
  for (const auto& [key, c] : a.terms()) {
    const int n1 = key.first.size();
    const int n2 = key.second.size();
    const Matrix& g1 = jack_transition_matrix(n1, model.chart_param(1));
    const Matrix& g2 = jack_transition_matrix(n2, model.chart_param(2));
    const auto& parts1 = enumerate_partitions(n1);
    const auto& parts2 = enumerate_partitions(n2);
    const std::size_t i1 = partition_index(key.first);
    const std::size_t i2 = partition_index(key.second);
    for (std::size_t j1 = 0; j1 < parts1.size(); ++j1) {
      if (g1(i1, j1) == 0) continue;
      const Rational c1 = c * g1(i1, j1) / z_factor(parts1[j1]);
      for (std::size_t j2 = 0; j2 < parts2.size(); ++j2)
        out.add({parts1[j1], parts2[j2]}, c1 * g2(i2, j2) / z_factor(parts2[j2]));
    }
  }
  return out;
}

inline EquivClass q_to_fixed(const HeisCombination& q) { return m2_expand(m1_expand(q)); }

inline HeisCombination fixed_to_q(const EquivClass& a) { return m1_inverse(m2_inverse(a)); }

/// Full star product of two Q-basis combinations, written back in the Q basis.
inline HeisCombination star_q(const HeisCombination& a, const HeisCombination& b) {
  a.require_compatible(b);
  if (a.basis() != HeisBasis::Q) throw std::domain_error("star_q: expects Q-basis inputs");
  return fixed_to_q(star(q_to_fixed(a), q_to_fixed(b)));
}

/// Keeps only the terms of ordinary degree `degree`.
inline HeisCombination graded_piece(const HeisCombination& h, int degree) {
  HeisCombination out(h.model(), h.n(), h.basis());
  for (const auto& [key, c] : h.terms())
    if (ordinary_degree(key) == degree) out.add(key, c);
  return out;
}

/// Ordinary cup product Q_a cup Q_b in H*(X(gamma)^[n]): the degree
/// deg a + deg b part of the star product (associated graded ring).
inline HeisCombination ordinary_cup(const HeisMonomial& a, const HeisMonomial& b,
                                    const SurfaceModel& model) {
  require_line_bundle(model);
  if (a.basis != HeisBasis::Q || b.basis != HeisBasis::Q)
    throw std::domain_error("ordinary_cup: expects Q-basis monomials");
  if (a.key.total() != b.key.total())
    throw std::domain_error("ordinary_cup: monomials of different n (" +
                            std::to_string(a.key.total()) + " vs " +
                            std::to_string(b.key.total()) + ")");
  const int degree = a.ordinary_degree() + b.ordinary_degree();
  const int n = a.key.total();
  if (degree > 2 * n) return HeisCombination(model, n, HeisBasis::Q);
  const auto full =
      star_q(HeisCombination::monomial(model, a), HeisCombination::monomial(model, b));
  return graded_piece(full, degree);
}

/// Bilinear extension to combinations; each pair of terms is projected to
/// the sum of its own degrees.
inline HeisCombination ordinary_cup(const HeisCombination& a, const HeisCombination& b) {
  a.require_compatible(b);
  HeisCombination out(a.model(), a.n(), HeisBasis::Q);
  for (const auto& [ka, ca] : a.terms())
    for (const auto& [kb, cb] : b.terms())
      out += ordinary_cup(HeisMonomial{ka, HeisBasis::Q}, HeisMonomial{kb, HeisBasis::Q},
                          a.model()) *
             (ca * cb);
  return out;
}

// ---------------------------------------------------------------------------
// Structure constants
// ---------------------------------------------------------------------------

enum class TableBasis { FixedPoint, QGraded };

struct StructureRow {
  Bipartition left;
  Bipartition right;
  std::optional<Bipartition> result;  // empty: the product is zero
  Rational coeff = 0;

  friend bool operator==(const StructureRow&, const StructureRow&) = default;
};

struct StructureTable {
  SurfaceModel model;
  int n = 0;
  TableBasis basis = TableBasis::FixedPoint;
  std::vector<StructureRow> rows;

  friend bool operator==(const StructureTable&, const StructureTable&) = default;
};

/// Complete multiplication table over all ordered pairs of basis elements, in
/// enumerate order; each product contributes its nonzero terms in order, or a
/// single zero row. `jobs` > 1 splits the pairs across threads.
inline StructureTable structure_constants(int n, const SurfaceModel& model, TableBasis basis,
                                          unsigned jobs = 1) {
  if (n < 0) throw std::domain_error("structure_constants: negative n");
  if (basis == TableBasis::QGraded) require_line_bundle(model);
  const std::vector<Bipartition> keys =
      basis == TableBasis::FixedPoint ? fixed_point_keys(model, n) : enumerate_bipartitions(n);
  const std::size_t pairs = keys.size() * keys.size();
  std::vector<std::vector<StructureRow>> cells(pairs);

  auto compute = [&](std::size_t idx) {
    const Bipartition& l = keys[idx / keys.size()];
    const Bipartition& r = keys[idx % keys.size()];
    std::vector<StructureRow>& out = cells[idx];
    auto emit = [&](const auto& terms) {
      for (const auto& [key, c] : terms) out.push_back({l, r, key, c});
      if (out.empty()) out.push_back({l, r, std::nullopt, 0});
    };
    if (basis == TableBasis::FixedPoint) {
      emit(star(EquivClass::basis_element(model, l), EquivClass::basis_element(model, r)).terms());
    } else {
      emit(ordinary_cup(HeisMonomial{l, HeisBasis::Q}, HeisMonomial{r, HeisBasis::Q}, model)
               .terms());
    }
  };

  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(pairs, 1))));
  if (jobs == 1) {
    for (std::size_t i = 0; i < pairs; ++i) compute(i);
  } else {
    std::vector<std::exception_ptr> errors(jobs);
    std::vector<std::thread> workers;
    for (unsigned w = 0; w < jobs; ++w)
      workers.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < pairs; i += jobs) compute(i);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    for (auto& t : workers) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  StructureTable table{model, n, basis, {}};
  for (auto& c : cells)
    for (auto& row : c) table.rows.push_back(std::move(row));
  return table;
}

}  // namespace jackhilb
