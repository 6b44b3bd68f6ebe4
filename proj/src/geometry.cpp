#include "arcdelta/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "arcdelta/errors.hpp"

namespace arcdelta {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kScanPoints = 512;     // coarse intervals for distance_to_arc
constexpr int kCurvatureSamples = 2048;

double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                            double fm, double fb, double whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol) {
  if (a == b) return 0.0;
  double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace

struct ArcCurve::Impl {
  Kind kind = Kind::segment;
  double length = 0.0;
  double margin = 0.0;
  double max_kappa = 0.0;

  // analytic kinds
  double radius = 0.0;  // circular_arc

  // parametric kind: input map with arc-length knot table over the extended range
  std::function<Vec2(double)> map;
  double fd_step = 0.0;
  double u_lo = 0.0, u_hi = 0.0;       // extended u-range
  std::vector<double> knots_u, knots_s;  // knots_s[0] = -margin, monotone

  std::vector<Vec2> scan;  // cached Gamma on the uniform [0, L] scan grid

  Vec2 map_d1(double u) const {
    double h = fd_step;
    Vec2 a = map(u - 2 * h), b = map(u - h), c = map(u + h), d = map(u + 2 * h);
    return (1.0 / (12.0 * h)) * (Vec2{a.x - d.x, a.y - d.y} + 8.0 * (c - b));
  }
  Vec2 map_d2(double u) const {
    double h = fd_step;
    Vec2 a = map(u - 2 * h), b = map(u - h), c0 = map(u), c = map(u + h), d = map(u + 2 * h);
    return (1.0 / (12.0 * h * h)) *
           (-1.0 * (a + d) + 16.0 * (b + c) - 30.0 * c0);
  }
  double speed(double u) const { return norm(map_d1(u)); }

  // cumulative arc length from u_lo, by knot table + local quadrature
  double arclen_from_lo(double u) const {
    auto it = std::upper_bound(knots_u.begin(), knots_u.end(), u);
    size_t k = (it == knots_u.begin()) ? 0 : static_cast<size_t>(it - knots_u.begin() - 1);
    if (k >= knots_u.size() - 1) k = knots_u.size() - 2;
    double base = knots_s[k] + margin;  // knots_s stores s with s(u0) = 0
    double extra = adaptive_simpson([this](double v) { return speed(v); }, knots_u[k], u, 1e-13);
    return base + extra;
  }

  // invert s(u) = s for s relative to the arc start (s(u0) = 0)
  double u_of_s(double s) const {
    double target = s + margin;  // arc length from u_lo
    auto it = std::upper_bound(knots_s.begin(), knots_s.end(), s);
    size_t k = (it == knots_s.begin()) ? 0 : static_cast<size_t>(it - knots_s.begin() - 1);
    if (k >= knots_u.size() - 1) k = knots_u.size() - 2;
    double lo = knots_u[k], hi = knots_u[k + 1];
    double u = 0.5 * (lo + hi);
    for (int it2 = 0; it2 < 60; it2++) {
      double g = arclen_from_lo(u) - target;
      if (std::abs(g) < 1e-13 * std::max(1.0, length)) break;
      double du = -g / std::max(speed(u), 1e-12);
      if (g > 0) hi = u; else lo = u;
      u += du;
      if (u <= lo || u >= hi) u = 0.5 * (lo + hi);  // Newton left the bracket, bisect
    }
    return u;
  }

  Vec2 point_raw(double s) const {
    switch (kind) {
      case Kind::segment: return {s, 0.0};
      case Kind::circular_arc: return {radius * std::cos(s / radius), radius * std::sin(s / radius)};
      case Kind::parametric: return map(u_of_s(s));
    }
    return {};
  }
  Vec2 d1_raw(double s) const {
    switch (kind) {
      case Kind::segment: return {1.0, 0.0};
      case Kind::circular_arc: return {-std::sin(s / radius), std::cos(s / radius)};
      case Kind::parametric: {
        double u = u_of_s(s);
        Vec2 d1 = map_d1(u);
        return (1.0 / norm(d1)) * d1;
      }
    }
    return {};
  }
  Vec2 d2_raw(double s) const {
    switch (kind) {
      case Kind::segment: return {0.0, 0.0};
      case Kind::circular_arc:
        return {-std::cos(s / radius) / radius, -std::sin(s / radius) / radius};
      case Kind::parametric: {
        double u = u_of_s(s);
        Vec2 d1 = map_d1(u), d2 = map_d2(u);
        double g2 = norm2(d1);
        // chain rule through the unit-speed reparametrization
        return (1.0 / g2) * d2 - (dot(d1, d2) / (g2 * g2)) * d1;
      }
    }
    return {};
  }
  double kappa_raw(double s) const {
    switch (kind) {
      case Kind::segment: return 0.0;
      case Kind::circular_arc: return 1.0 / radius;
      case Kind::parametric: {
        double u = u_of_s(s);
        Vec2 d1 = map_d1(u), d2 = map_d2(u);
        double g = norm(d1);
        return (d1.x * d2.y - d2.x * d1.y) / (g * g * g);
      }
    }
    return 0.0;
  }

  void build_scan_cache() {
    scan.resize(kScanPoints + 1);
    for (int k = 0; k <= kScanPoints; k++) scan[k] = point_raw(length * k / kScanPoints);
  }

  void check_injective_samples() const {
    const int n = 512;
    const double hs = (length + 2 * margin) / n;
    std::vector<Vec2> pts(n + 1);
    std::vector<double> ss(n + 1);
    for (int i = 0; i <= n; i++) {
      ss[i] = -margin + hs * i;
      pts[i] = point_raw(ss[i]);
    }
    // distinct branches passing within the sampling resolution count as a
    // self-intersection; nearby-in-s pairs are constrained only relative to
    // their arc separation
    for (int i = 0; i <= n; i++)
      for (int j = i + 1; j <= n; j++) {
        double chord = norm(pts[i] - pts[j]);
        double ds = ss[j] - ss[i];
        if (chord < std::min(0.2 * ds, 1.5 * hs))
          fail(Errc::self_intersection, "curve samples nearly coincide at resolution h");
      }
  }
};

ArcCurve::ArcCurve(std::shared_ptr<const Impl> impl, bool reversed)
    : impl_(std::move(impl)), reversed_(reversed) {}

double ArcCurve::to_impl_s(double s) const {
  double l0 = impl_->margin, L = impl_->length;
  if (s < -l0 - 1e-9 || s > L + l0 + 1e-9)
    fail(Errc::bad_argument, "s out of extended range");
  return reversed_ ? L - s : s;
}

ArcCurve ArcCurve::make_segment(double length, std::optional<double> margin) {
  if (!(length > 0.0)) fail(Errc::bad_argument, "segment length must be positive");
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::segment;
  impl->length = length;
  impl->margin = margin.value_or(0.5 * length);
  if (!(impl->margin > 0.0)) fail(Errc::bad_argument, "margin must be positive");
  impl->max_kappa = 0.0;
  impl->build_scan_cache();
  return ArcCurve(std::move(impl));
}

ArcCurve ArcCurve::make_circular_arc(double radius, double angle, std::optional<double> margin) {
  if (!(radius > 0.0)) fail(Errc::bad_argument, "radius must be positive");
  if (!(angle > 0.0)) fail(Errc::bad_argument, "opening angle must be positive");
  if (angle >= 2.0 * kPi) fail(Errc::closed_loop, "opening angle must stay below 2*pi");
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::circular_arc;
  impl->radius = radius;
  impl->length = radius * angle;
  double cap = 0.45 * radius * (2.0 * kPi - angle);  // keep the extended arc open
  impl->margin = margin.value_or(std::min({0.5 * impl->length, 0.4 * radius, cap}));
  if (!(impl->margin > 0.0)) fail(Errc::bad_argument, "margin must be positive");
  if (angle + 2.0 * impl->margin / radius >= 2.0 * kPi)
    fail(Errc::closed_loop, "margin extension closes the arc into a loop");
  impl->max_kappa = 1.0 / radius;
  impl->build_scan_cache();
  return ArcCurve(std::move(impl));
}

ArcCurve ArcCurve::make_parametric(std::function<Vec2(double)> map, double u0, double u1,
                                   std::optional<double> margin) {
  if (!map) fail(Errc::bad_argument, "parametric map must be callable");
  if (!(u1 > u0)) fail(Errc::bad_argument, "u-range must be non-degenerate");
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::parametric;
  impl->map = std::move(map);
  impl->fd_step = 1e-3 * (u1 - u0);

  auto speed = [&](double u) { return impl->speed(u); };
  auto kappa_of_u = [&](double u) {
    Vec2 d1 = impl->map_d1(u), d2 = impl->map_d2(u);
    double g = norm(d1);
    return (d1.x * d2.y - d2.x * d1.y) / (g * g * g);
  };

  for (int i = 0; i <= 256; i++) {
    double u = u0 + (u1 - u0) * i / 256.0;
    if (speed(u) < 1e-8) fail(Errc::vanishing_speed, "|d map/du| vanishes inside the u-range");
  }
  double arc_len = adaptive_simpson(speed, u0, u1, 1e-12);
  impl->length = arc_len;

  double k_arc = 0.0;
  for (int i = 0; i <= 512; i++) k_arc = std::max(k_arc, std::abs(kappa_of_u(u0 + (u1 - u0) * i / 512.0)));
  double l0 = margin.value_or(std::min(0.5 * arc_len, k_arc > 0 ? 0.4 / (1.1 * k_arc) : 0.5 * arc_len));
  if (!(l0 > 0.0)) fail(Errc::bad_argument, "margin must be positive");

  // extend the u-range until each side carries arc length l0
  auto extend = [&](double from, double dir) {
    double step = 0.25 * (u1 - u0), u = from, acc = 0.0;
    while (acc < l0) {
      double nxt = u + dir * step;
      double piece = std::abs(adaptive_simpson(speed, u, nxt, 1e-12));
      if (acc + piece >= l0) {
        double lo = 0.0, hi = step;
        for (int it = 0; it < 80; it++) {
          double mid = 0.5 * (lo + hi);
          double part = std::abs(adaptive_simpson(speed, u, u + dir * mid, 1e-13));
          if (acc + part < l0) lo = mid; else hi = mid;
          if (std::abs(acc + part - l0) < 1e-13 * std::max(1.0, arc_len)) break;
        }
        return u + dir * 0.5 * (lo + hi);
      }
      acc += piece;
      u = nxt;
      if (std::abs(u - from) > 1e4 * (u1 - u0)) fail(Errc::bad_argument, "margin extension diverged");
    }
    return u;
  };
  impl->u_lo = extend(u0, -1.0);
  impl->u_hi = extend(u1, +1.0);
  impl->margin = l0;

  for (int i = 0; i <= 512; i++) {
    double u = impl->u_lo + (impl->u_hi - impl->u_lo) * i / 512.0;
    if (speed(u) < 1e-8) fail(Errc::vanishing_speed, "|d map/du| vanishes inside the margins");
  }

  // cumulative length knots over the extended range
  const int nk = 1024;
  impl->knots_u.resize(nk + 1);
  impl->knots_s.resize(nk + 1);
  double acc = 0.0;
  impl->knots_u[0] = impl->u_lo;
  impl->knots_s[0] = -l0;
  for (int k = 1; k <= nk; k++) {
    double ua = impl->u_lo + (impl->u_hi - impl->u_lo) * (k - 1) / nk;
    double ub = impl->u_lo + (impl->u_hi - impl->u_lo) * k / nk;
    acc += adaptive_simpson(speed, ua, ub, 1e-13);
    impl->knots_u[k] = ub;
    impl->knots_s[k] = acc - l0;
  }

  double k_ext = 0.0;
  for (int i = 0; i <= kCurvatureSamples; i++) {
    double u = impl->u_lo + (impl->u_hi - impl->u_lo) * i / kCurvatureSamples;
    k_ext = std::max(k_ext, std::abs(kappa_of_u(u)));
  }
  impl->max_kappa = 1.1 * k_ext;

  impl->check_injective_samples();
  impl->build_scan_cache();
  return ArcCurve(std::move(impl));
}

ArcCurve::Kind ArcCurve::kind() const { return impl_->kind; }
double ArcCurve::length() const { return impl_->length; }
double ArcCurve::margin() const { return impl_->margin; }

Vec2 ArcCurve::point(double s) const { return impl_->point_raw(to_impl_s(s)); }

Vec2 ArcCurve::derivative(double s) const {
  Vec2 d = impl_->d1_raw(to_impl_s(s));
  return reversed_ ? -1.0 * d : d;
}

Vec2 ArcCurve::second_derivative(double s) const { return impl_->d2_raw(to_impl_s(s)); }

double ArcCurve::curvature(double s) const {
  double k = impl_->kappa_raw(to_impl_s(s));
  return reversed_ ? -k : k;
}

Frame ArcCurve::frame(double s) const {
  Vec2 t = derivative(s);
  return {t, Vec2{-t.y, t.x}};
}

Vec2 ArcCurve::tubular_map(double s, double t) const {
  double K = max_curvature();
  if (std::abs(t) * K >= 0.5) fail(Errc::tube_too_wide, "|t| * max|kappa| must stay below 1/2");
  Frame f = frame(s);
  return point(s) + t * f.normal;
}

Vec2 ArcCurve::tubular_map(const TubularPoint& q) const {
  if (!(std::abs(q.t) < q.half_width))
    fail(Errc::bad_argument, "tubular point needs |t| < half_width");
  if (q.half_width * max_curvature() >= 0.5)
    fail(Errc::tube_too_wide, "half_width * max|kappa| must stay below 1/2");
  return tubular_map(q.s, q.t);
}

double ArcCurve::max_curvature() const { return impl_->max_kappa; }

double ArcCurve::distance_to_arc(Vec2 p) const {
  const auto& scan = impl_->scan;
  double L = impl_->length;
  int best = 0;
  double best_d2 = norm2(p - scan[0]);
  for (int k = 1; k <= kScanPoints; k++) {
    double d2 = norm2(p - scan[k]);
    if (d2 < best_d2) {
      best_d2 = d2;
      best = k;
    }
  }
  double a = L * std::max(best - 1, 0) / kScanPoints;
  double b = L * std::min(best + 1, kScanPoints) / kScanPoints;
  auto d2_at = [&](double sig) { return norm2(p - impl_->point_raw(sig)); };
  // golden-section refinement on the bracketing interval
  const double gr = 0.61803398874989485;
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = d2_at(x1), f2 = d2_at(x2);
  for (int it = 0; it < 70 && (b - a) > 1e-15 * std::max(1.0, L); it++) {
    if (f1 < f2) {
      b = x2; x2 = x1; f2 = f1;
      x1 = b - gr * (b - a);
      f1 = d2_at(x1);
    } else {
      a = x1; x1 = x2; f1 = f2;
      x2 = a + gr * (b - a);
      f2 = d2_at(x2);
    }
  }
  double dmin2 = std::min({best_d2, f1, f2, norm2(p - scan[0]), norm2(p - scan[kScanPoints])});
  return std::sqrt(dmin2);
}

bool ArcCurve::validate_tubular(double half_width) const {
  if (!(half_width > 0.0)) fail(Errc::bad_argument, "half width must be positive");
  double a = half_width, L = impl_->length;
  if (a > impl_->margin * (1.0 + 1e-12)) return false;
  if (a * max_curvature() >= 0.5) return false;
  const int ns = 41, nt = 9;
  std::vector<Vec2> pts;
  std::vector<double> ps, pt;
  pts.reserve(ns * nt);
  for (int i = 0; i < ns; i++)
    for (int j = 0; j < nt; j++) {
      double s = -a + (L + 2 * a) * i / (ns - 1);
      double t = -a + 2 * a * j / (nt - 1);
      Frame f = frame(s);
      pts.push_back(point(s) + t * f.normal);
      ps.push_back(s);
      pt.push_back(t);
    }
  for (size_t i = 0; i < pts.size(); i++)
    for (size_t j = i + 1; j < pts.size(); j++) {
      double dp2 = norm2(pts[i] - pts[j]);
      double dq2 = (ps[i] - ps[j]) * (ps[i] - ps[j]) + (pt[i] - pt[j]) * (pt[i] - pt[j]);
      if (dp2 < 1e-6 * dq2) return false;
    }
  return true;
}

double ArcCurve::beta_cap() const {
  double l0 = impl_->margin;
  const double e = 2.71828182845904523536;
  if (6.0 / e < l0) return e;
  double lo = e, hi = 1e12;
  for (int it = 0; it < 200; it++) {
    double mid = std::sqrt(lo * hi);
    if (6.0 * std::log(mid) / mid < l0) hi = mid; else lo = mid;
  }
  return hi;
}

ArcCurve ArcCurve::reversed() const { return ArcCurve(impl_, !reversed_); }

std::vector<PolylineSample> ArcCurve::sample_polyline(int count) const {
  if (count < 2) fail(Errc::bad_argument, "polyline needs at least 2 samples");
  std::vector<PolylineSample> out;
  out.reserve(count);
  double l0 = impl_->margin, L = impl_->length;
  for (int i = 0; i < count; i++) {
    double s = -l0 + (L + 2 * l0) * i / (count - 1);
    out.push_back({s, point(s), curvature(s)});
  }
  return out;
}

}  // namespace arcdelta
