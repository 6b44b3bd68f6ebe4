#ifndef ARCDELTA_GEOMETRY_HPP
#define ARCDELTA_GEOMETRY_HPP

#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

namespace arcdelta {

struct Vec2 {
  double x = 0.0, y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double c, Vec2 v) { return {c * v.x, c * v.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }
inline double norm2(Vec2 v) { return v.x * v.x + v.y * v.y; }

// Unit tangent and left unit normal (-tangent.y, tangent.x).
struct Frame {
  Vec2 tangent;
  Vec2 normal;
};

// A point of the tubular coordinate rectangle P(a) = (-a, L+a) x (-a, a).
struct TubularPoint {
  double s = 0.0;
  double t = 0.0;
  double half_width = 0.0;  // a
};

struct PolylineSample {
  double s;
  Vec2 p;
  double kappa;
};

// Arc-length parametrized open planar curve on [0, L], evaluable with two
// derivatives on the extension [-l0, L+l0]. Immutable after construction;
// all member functions are const and safe to call concurrently.
class ArcCurve {
 public:
  enum class Kind { segment, circular_arc, parametric };

  // Empty handle; only assignment and destruction are valid until a factory
  // result is assigned.
  ArcCurve() = default;

  // Straight segment (s, 0) for s in [0, L]; margin defaults to L/2.
  static ArcCurve make_segment(double length, std::optional<double> margin = {});

  // Counterclockwise circular arc of radius R centered at the origin,
  // starting at (R, 0): Gamma(s) = R (cos(s/R), sin(s/R)), kappa = 1/R.
  // The opening angle must stay strictly below 2*pi, margins included.
  static ArcCurve make_circular_arc(double radius, double angle, std::optional<double> margin = {});

  // Arc-length reparametrization of an injective regular map u -> (x(u), y(u))
  // on [u0, u1]; derivatives by fixed-step finite differences, cumulative
  // length by adaptive Simpson quadrature, inverted by bisection + Newton.
  static ArcCurve make_parametric(std::function<Vec2(double)> map, double u0, double u1,
                                  std::optional<double> margin = {});

  Kind kind() const;
  double length() const;
  double margin() const;  // l0

  Vec2 point(double s) const;
  Vec2 derivative(double s) const;
  Vec2 second_derivative(double s) const;
  double curvature(double s) const;
  Frame frame(double s) const;

  // Phi(s, t) = Gamma(s) + t n(s); requires |t| * max|kappa| < 1/2.
  Vec2 tubular_map(double s, double t) const;
  // Checked variant enforcing the P(a) invariants |t| < a and a K < 1/2.
  Vec2 tubular_map(const TubularPoint& q) const;

  // min over sigma in [0, L] of |p - Gamma(sigma)|; coarse 512-point scan
  // followed by golden-section refinement, absolute accuracy ~1e-9.
  double distance_to_arc(Vec2 p) const;

  // K = sup |kappa| over the extended range. Exact for the analytic kinds,
  // dense sampling with a 10% safety margin for parametric curves.
  double max_curvature() const;

  // True iff half_width <= l0, half_width * K < 1/2 and a pairwise-sample
  // injectivity check of Phi on P(half_width) passes.
  bool validate_tubular(double half_width) const;

  // Smallest beta above which 6 log(beta)/beta < l0 (the usable strong-
  // coupling range for this margin).
  double beta_cap() const;

  // Orientation-reversed copy: s -> L - s, kappa flips sign.
  ArcCurve reversed() const;

  std::vector<PolylineSample> sample_polyline(int count) const;

 private:
  struct Impl;
  explicit ArcCurve(std::shared_ptr<const Impl> impl, bool reversed = false);
  double to_impl_s(double s) const;

  std::shared_ptr<const Impl> impl_;
  bool reversed_ = false;
};

}  // namespace arcdelta

#endif
