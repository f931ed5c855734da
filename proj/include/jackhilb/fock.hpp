#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <stdexcept>
#include <vector>

#include "jackhilb/partition.hpp"
#include "jackhilb/rational.hpp"
#include "jackhilb/surface.hpp"
#include "jackhilb/symfunc.hpp"

namespace jackhilb {

/// Vector of the Fock space built on the symmetric functions: one tensor
/// factor per torus-fixed point of the surface. Terms are unnormalized
/// power-sum products p_{l1} (x) p_{l2}; on the plane the second slot is
/// always empty.
class FockState {
 public:
  using Terms = std::map<Bipartition, Rational, BipartitionOrder>;

  FockState(SurfaceModel model, int degree) : model_(std::move(model)), degree_(degree) {}

  static FockState vacuum(const SurfaceModel& model) {
    FockState s(model, 0);
    s.add({}, 1);
    return s;
  }

  const SurfaceModel& model() const { return model_; }
  int degree() const { return degree_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Rational coeff(const Bipartition& key) const {
    auto it = terms_.find(key);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add(const Bipartition& key, const Rational& c) {
    if (key.total() != degree_)
      throw std::domain_error("FockState: term " + key.to_string() + " has wrong degree");
    if (model_.is_plane() && !key.second.empty())
      throw std::domain_error("FockState: plane states have a single tensor factor");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(key, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  FockState& operator+=(const FockState& o) {
    require_compatible(o);
    for (const auto& [k, c] : o.terms_) add(k, c);
    return *this;
  }
  FockState& operator-=(const FockState& o) {
    require_compatible(o);
    for (const auto& [k, c] : o.terms_) add(k, -c);
    return *this;
  }
  FockState& operator*=(const Rational& s) {
    if (s == 0) terms_.clear();
    for (auto& [k, c] : terms_) c *= s;
    return *this;
  }

  friend FockState operator+(FockState a, const FockState& b) { return a += b; }
  friend FockState operator-(FockState a, const FockState& b) { return a -= b; }
  friend FockState operator*(FockState a, const Rational& s) { return a *= s; }
  friend FockState operator*(const Rational& s, FockState a) { return a *= s; }
  friend bool operator==(const FockState&, const FockState&) = default;

 private:
  void require_compatible(const FockState& o) const {
    require_same_model(model_, o.model_);
    if (o.degree_ != degree_) throw std::domain_error("FockState: degree mismatch");
  }

  SurfaceModel model_;
  int degree_;
  Terms terms_;
};

/// p_{-k}([Y]): multiplication by p_k in the tensor factor of Y.
inline FockState create(int k, CurveLabel y, const FockState& s) {
  if (k < 1) throw std::domain_error("create: mode must be positive");
  const int factor = curve_factor(y, s.model());
  FockState out(s.model(), s.degree() + k);
  for (const auto& [key, c] : s.terms()) {
    Bipartition next = key;
    Partition& slot = factor == 1 ? next.first : next.second;
    slot = slot.with_part(k);
    out.add(next, c);
  }
  return out;
}

/// p_k([Y]) = <Y,Y> * k * d/dp_k on the factor of Y, the adjoint of create.
inline FockState annihilate(int k, CurveLabel y, const FockState& s) {
  if (k < 1) throw std::domain_error("annihilate: mode must be positive");
  const int factor = curve_factor(y, s.model());
  const Rational scale = s.model().chart_param(factor) * k;
  FockState out(s.model(), s.degree() - k);
  for (const auto& [key, c] : s.terms()) {
    const Partition& slot = factor == 1 ? key.first : key.second;
    const int m = slot.multiplicity(k);
    if (m == 0) continue;
    Bipartition next = key;
    (factor == 1 ? next.first : next.second) = slot.without_part(k);
    out.add(next, c * scale * m);
  }
  return out;
}

/// p_k([Y]) for any nonzero k: creation for k < 0, annihilation for k > 0.
/// p_0 is the zero operator.
inline FockState apply_mode(int k, CurveLabel y, const FockState& s) {
  if (k < 0) return create(-k, y, s);
  if (k > 0) return annihilate(k, y, s);
  curve_factor(y, s.model());
  return FockState(s.model(), s.degree());
}

/// (p_k(Y1) p_l(Y2) - p_l(Y2) p_k(Y1)) applied to s.
inline FockState commutator(int k, int l, CurveLabel y1, CurveLabel y2, const FockState& s) {
  FockState ab = apply_mode(k, y1, apply_mode(l, y2, s));
  FockState ba = apply_mode(l, y2, apply_mode(k, y1, s));
  if (ab.degree() != ba.degree()) throw std::logic_error("commutator: degree drift");
  return ab - ba;
}

/// Value the Heisenberg relation predicts for the commutator: k delta_{k,-l} <Y1,Y2>.
inline Rational heisenberg_constant(int k, int l, CurveLabel y1, CurveLabel y2,
                                    const SurfaceModel& model) {
  if (k == 0 || k != -l) return 0;
  return Rational(k) * curve_pairing(y1, y2, model);
}

/// Induced bilinear form: <p_l1 (x) p_l2, p_m1 (x) p_m2> =
/// delta z_l1 r1^{len l1} z_l2 r2^{len l2}, r_j the chart Jack parameters.
inline Rational pairing(const FockState& a, const FockState& b) {
  require_same_model(a.model(), b.model());
  if (a.degree() != b.degree()) throw std::domain_error("pairing: degree mismatch");
  const SurfaceModel& model = a.model();
  Rational sum = 0;
  for (const auto& [key, c] : a.terms()) {
    const Rational d = b.coeff(key);
    if (d == 0) continue;
    Rational w = z_factor(key.first) * pow(model.chart_param(1), key.first.length());
    if (!model.is_plane())
      w *= z_factor(key.second) * pow(model.chart_param(2), key.second.length());
    sum += c * d * w;
  }
  return sum;
}

/// p_{-k}(omega) for a class omega in H^2_T(X(gamma)), extended linearly from
/// the fiber operators.
inline FockState create(int k, const CurveClass& omega, const FockState& s) {
  require_line_bundle(s.model());
  if (omega.gamma != s.model().gamma())
    throw std::domain_error("create: curve class and state live on different surfaces");
  const CurveClass f = curve_decompose(omega, CurveClass::Basis::Fiber);
  return create(k, CurveLabel::Sigma1, s) * f.first + create(k, CurveLabel::Sigma2, s) * f.second;
}

/// Heisenberg monomial bases of H^{2n}_T(X(gamma)^[n]):
///  - CurvePair: prod p_{-k}([Sigma1])^{m_k(l1)} prod p_{-k}([Sigma2])^{m_k(l2)} |0>
///  - TSigma0:   prod p_{-k}(t)^{m_k(l1)} prod p_{-k}([Sigma0])^{m_k(l2)} |0>
/// Both are unnormalized (no 1/z factors).
enum class MonomialBasis { CurvePair, TSigma0 };

inline FockState heis_monomial(const Bipartition& key, MonomialBasis basis,
                               const SurfaceModel& model) {
  require_line_bundle(model);
  FockState s = FockState::vacuum(model);
  if (basis == MonomialBasis::CurvePair) {
    for (int k : key.first.parts()) s = create(k, CurveLabel::Sigma1, s);
    for (int k : key.second.parts()) s = create(k, CurveLabel::Sigma2, s);
    return s;
  }
  const long g = model.gamma();
  const CurveClass t = CurveClass::t_sigma0(g, 1, 0);
  const CurveClass sigma0 = CurveClass::t_sigma0(g, 0, 1);
  for (int k : key.first.parts()) s = create(k, t, s);
  for (int k : key.second.parts()) s = create(k, sigma0, s);
  return s;
}

/// p_{-lambda}|0> = (1/z_lambda) prod p_{-i}^{m_i} |0> on the plane.
inline FockState normalized_monomial(const Partition& lambda, const SurfaceModel& model) {
  if (!model.is_plane()) throw std::domain_error("normalized_monomial: plane model only");
  FockState s = FockState::vacuum(model);
  for (int k : lambda.parts()) s = create(k, CurveLabel::Sigma, s);
  return s * (1 / z_factor(lambda));
}

/// Power-sum monomial basis of the degree-n piece.
inline std::vector<FockState> fock_basis(const SurfaceModel& model, int n) {
  std::vector<FockState> out;
  if (model.is_plane()) {
    for (const Partition& p : enumerate_partitions(n)) {
      FockState s(model, n);
      s.add({p, {}}, 1);
      out.push_back(std::move(s));
    }
    return out;
  }
  for (const Bipartition& b : enumerate_bipartitions(n)) {
    FockState s(model, n);
    s.add(b, 1);
    out.push_back(std::move(s));
  }
  return out;
}

/// Plane Fock states are symmetric functions in the unnormalized power basis.
inline SymPoly to_sympoly(const FockState& s) {
  if (!s.model().is_plane()) throw std::domain_error("to_sympoly: plane model only");
  SymPoly f(s.degree(), BasisLabel::power());
  for (const auto& [key, c] : s.terms()) f.add(key.first, c);
  return f;
}

inline FockState from_sympoly(const SymPoly& f, const SurfaceModel& model) {
  if (!model.is_plane()) throw std::domain_error("from_sympoly: plane model only");
  const SymPoly p = convert(f, BasisLabel::power());
  FockState s(model, f.degree());
  for (const auto& [lambda, c] : p.terms()) s.add({lambda, {}}, c);
  return s;
}

}  // namespace jackhilb

namespace jackhilb {

struct HeisenbergCheck {
  std::int64_t checked = 0;
  std::vector<std::string> failures;
};

/// Checks [p_k(Y1), p_l(Y2)] = k delta_{k,-l} <Y1,Y2> Id on every power-sum
/// basis state of degree <= max_degree, for 0 < |k|, |l| <= max_mode and all
/// curve pairs of the model.
inline HeisenbergCheck check_heisenberg(const SurfaceModel& model, int max_degree, int max_mode) {
  std::vector<CurveLabel> labels;
  if (model.is_plane())
    labels = {CurveLabel::Sigma};
  else
    labels = {CurveLabel::Sigma1, CurveLabel::Sigma2};
  HeisenbergCheck out;
  for (int n = 0; n <= max_degree; ++n)
    for (const FockState& s : fock_basis(model, n))
      for (int k = -max_mode; k <= max_mode; ++k)
        for (int l = -max_mode; l <= max_mode; ++l) {
          if (k == 0 || l == 0) continue;
          for (CurveLabel y1 : labels)
            for (CurveLabel y2 : labels) {
              ++out.checked;
              const FockState got = commutator(k, l, y1, y2, s);
              const Rational c = heisenberg_constant(k, l, y1, y2, model);
              const bool ok = c == 0 ? got.is_zero() : got == s * c;
              if (!ok) {
                out.failures.push_back("[p_" + std::to_string(k) + "(" + to_string(y1) + "), p_" +
                                       std::to_string(l) + "(" + to_string(y2) + ")] on " +
                                       s.terms().begin()->first.to_string());
              }
            }
        }
  return out;
}

}  // namespace jackhilb
