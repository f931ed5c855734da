#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include "jackhilb/rational.hpp"

namespace jackhilb {

/// Torus-equivariant surface: the plane with weights (alpha, beta), alpha*beta > 0,
/// or the total space X(gamma) of O(-gamma) over P^1, gamma >= 2, whose two
/// affine charts look like planes with weights (-1, -1) and (gamma-1, 1).
class SurfaceModel {
 public:
  enum class Kind { Plane, LineBundle };

  static SurfaceModel plane(long alpha, long beta) {
    if (alpha == 0 || beta == 0 || (alpha > 0) != (beta > 0))
      throw std::domain_error("plane weights must be nonzero with the same sign (alpha=" +
                              std::to_string(alpha) + ", beta=" + std::to_string(beta) + ")");
    return SurfaceModel(Kind::Plane, alpha, beta, 0);
  }

  static SurfaceModel line_bundle(long gamma) {
    if (gamma < 2)
      throw std::domain_error("line bundle requires gamma >= 2, got " + std::to_string(gamma));
    return SurfaceModel(Kind::LineBundle, 0, 0, gamma);
  }

  Kind kind() const { return kind_; }
  bool is_plane() const { return kind_ == Kind::Plane; }
  long alpha() const { return alpha_; }
  long beta() const { return beta_; }
  long gamma() const { return gamma_; }

  /// Number of torus-fixed points on the surface (tensor factors of the Fock space).
  int charts() const { return is_plane() ? 1 : 2; }

  /// Torus weights (alpha, beta) of chart 1 or 2.
  std::pair<Rational, Rational> chart_weights(int chart) const {
    check_chart(chart);
    if (is_plane()) return {Rational(alpha_), Rational(beta_)};
    if (chart == 1) return {Rational(-1), Rational(-1)};
    return {Rational(gamma_ - 1), Rational(1)};
  }

  /// Jack parameter beta/alpha of a chart: beta/alpha, 1, or 1/(gamma-1).
  Rational chart_param(int chart) const {
    auto [a, b] = chart_weights(chart);
    return b / a;
  }

  std::string to_string() const {
    if (is_plane()) return "plane(" + std::to_string(alpha_) + "," + std::to_string(beta_) + ")";
    return "linebundle(" + std::to_string(gamma_) + ")";
  }

  friend bool operator==(const SurfaceModel&, const SurfaceModel&) = default;

 private:
  SurfaceModel(Kind kind, long alpha, long beta, long gamma)
      : kind_(kind), alpha_(alpha), beta_(beta), gamma_(gamma) {}

  void check_chart(int chart) const {
    if (chart < 1 || chart > charts())
      throw std::domain_error("chart " + std::to_string(chart) + " invalid for " + to_string());
  }

  Kind kind_;
  long alpha_;
  long beta_;
  long gamma_;
};

inline void require_same_model(const SurfaceModel& a, const SurfaceModel& b) {
  if (!(a == b))
    throw std::domain_error("model mismatch: " + a.to_string() + " vs " + b.to_string());
}

inline void require_line_bundle(const SurfaceModel& m) {
  if (m.is_plane()) throw std::domain_error("operation requires a line-bundle model");
}

/// Torus-invariant curves carrying Heisenberg operators: the u-axis Sigma of
/// the plane, or the two fibers Sigma1, Sigma2 of X(gamma).
enum class CurveLabel { Sigma, Sigma1, Sigma2 };

inline std::string to_string(CurveLabel y) {
  switch (y) {
    case CurveLabel::Sigma: return "Sigma";
    case CurveLabel::Sigma1: return "Sigma1";
    case CurveLabel::Sigma2: return "Sigma2";
  }
  return "?";
}

/// Fock tensor factor (1 or 2) that a curve's operators act on.
inline int curve_factor(CurveLabel y, const SurfaceModel& model) {
  const bool ok = model.is_plane() ? y == CurveLabel::Sigma : y != CurveLabel::Sigma;
  if (!ok) throw std::domain_error("curve " + to_string(y) + " not on " + model.to_string());
  return y == CurveLabel::Sigma2 ? 2 : 1;
}

/// <[Y1], [Y2]>: beta/alpha on the plane; 1 and 1/(gamma-1) on the fibers,
/// which are disjoint and so pair to zero with each other.
inline Rational curve_pairing(CurveLabel a, CurveLabel b, const SurfaceModel& model) {
  const int fa = curve_factor(a, model);
  const int fb = curve_factor(b, model);
  return fa == fb ? model.chart_param(fa) : Rational(0);
}

/// Class in H^2_T(X(gamma)) written in the fiber basis {[Sigma1], [Sigma2]} or
/// in the basis {t*1, [Sigma0]}.
struct CurveClass {
  enum class Basis { Fiber, TSigma0 };

  long gamma = 2;
  Basis basis = Basis::Fiber;
  Rational first = 0;
  Rational second = 0;

  static CurveClass fiber(long gamma, Rational sigma1, Rational sigma2) {
    return {gamma, Basis::Fiber, std::move(sigma1), std::move(sigma2)};
  }
  static CurveClass t_sigma0(long gamma, Rational t, Rational sigma0) {
    return {gamma, Basis::TSigma0, std::move(t), std::move(sigma0)};
  }

  friend bool operator==(const CurveClass&, const CurveClass&) = default;
};

/// Change of basis in H^2_T(X(gamma)), using
///   [Sigma0] = -[Sigma1] + (1-gamma)[Sigma2],   t*1 = -[Sigma1] + [Sigma2].
inline CurveClass curve_decompose(const CurveClass& c, CurveClass::Basis target) {
  if (c.gamma < 2) throw std::domain_error("curve class requires gamma >= 2");
  if (c.basis == target) return c;
  const Rational g(c.gamma);
  if (target == CurveClass::Basis::Fiber) {
    // a*t + b*Sigma0
    const Rational& a = c.first;
    const Rational& b = c.second;
    return CurveClass::fiber(c.gamma, -a - b, a + (1 - g) * b);
  }
  // x*Sigma1 + y*Sigma2: invert the 2x2 change (determinant gamma).
  const Rational& x = c.first;
  const Rational& y = c.second;
  return CurveClass::t_sigma0(c.gamma, ((1 - g) * x + y) / g, -(x + y) / g);
}

/// Bilinear form on H^2_T(X(gamma)) through fiber coordinates.
inline Rational curve_pairing(const CurveClass& a, const CurveClass& b) {
  if (a.gamma != b.gamma) throw std::domain_error("curve classes on different surfaces");
  const CurveClass fa = curve_decompose(a, CurveClass::Basis::Fiber);
  const CurveClass fb = curve_decompose(b, CurveClass::Basis::Fiber);
  return fa.first * fb.first + fa.second * fb.second / Rational(a.gamma - 1);
}

}  // namespace jackhilb
