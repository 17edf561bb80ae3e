#pragma once

// Closed-form intersections and set distances for primitive shape pairs.
//
// The checkers certify failures (empty intersections, unreachable gaps) only
// through this module: a result tagged Exact or Empty is a closed-form fact
// about the two sets, never a sampled estimate.  Pairs without a closed form
// report Unknown and callers fall back to descent-found proxies.

#include <tvkit/geometry.hpp>

#include <cmath>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

namespace tvkit {

constexpr double kExactEps = 1e-9;

struct ExactIntersection {
  enum class Kind { Exact, Empty, Unknown };
  Kind kind = Kind::Unknown;
  std::optional<Shape> shape;  // present iff kind == Exact

  static ExactIntersection exact(Shape s) { return {Kind::Exact, std::move(s)}; }
  static ExactIntersection empty() { return {Kind::Empty, std::nullopt}; }
  static ExactIntersection unknown() { return {Kind::Unknown, std::nullopt}; }
  bool is_exact() const { return kind == Kind::Exact; }
  bool is_empty() const { return kind == Kind::Empty; }
  bool is_unknown() const { return kind == Kind::Unknown; }
};

namespace detail {

constexpr double kInf = std::numeric_limits<double>::infinity();

// {base + t*dir : t in [lo, hi]} with dir unit; covers line, ray, segment.
struct LinearForm {
  Vec base;
  Vec dir;
  double lo = -kInf;
  double hi = kInf;
};

inline std::optional<LinearForm> as_linear(const Shape& s) {
  if (const Line* l = std::get_if<Line>(&s.node)) return LinearForm{l->point, l->dir, -kInf, kInf};
  if (const Ray* r = std::get_if<Ray>(&s.node)) return LinearForm{r->origin, r->dir, 0.0, kInf};
  if (const Segment* g = std::get_if<Segment>(&s.node)) {
    Vec d = g->to - g->from;
    double len = d.norm();
    if (len == 0.0) return LinearForm{g->from, Vec::Unit(g->from.size(), 0), 0.0, 0.0};
    return LinearForm{g->from, d / len, 0.0, len};
  }
  return std::nullopt;
}

inline Shape linear_to_shape(const LinearForm& f) {
  const bool lo_fin = std::isfinite(f.lo), hi_fin = std::isfinite(f.hi);
  if (lo_fin && hi_fin) {
    if (f.hi - f.lo <= kExactEps) return make_points({f.base + (0.5 * (f.lo + f.hi)) * f.dir});
    return make_segment(f.base + f.lo * f.dir, f.base + f.hi * f.dir);
  }
  if (lo_fin) return make_ray(f.base + f.lo * f.dir, f.dir);
  if (hi_fin) return make_ray(f.base + f.hi * f.dir, Vec(-f.dir));
  return make_line(f.base, f.dir);
}

inline double value_at(const LinearForm& f, double t, const Vec& n) { return n.dot(f.base) + t * n.dot(f.dir); }

// Intersection of two linear forms.
inline ExactIntersection intersect_linear(const LinearForm& a, const LinearForm& b) {
  const double c = a.dir.dot(b.dir);
  const Vec w = b.base - a.base;
  if (std::abs(std::abs(c) - 1.0) <= 1e-12) {
    // parallel; perpendicular offset decides collinearity
    double perp = (w - w.dot(a.dir) * a.dir).norm();
    if (perp > kExactEps) return ExactIntersection::empty();
    // collinear: map b's interval into a's parameter
    double shift = w.dot(a.dir);
    double t1 = shift + c * b.lo, t2 = shift + c * b.hi;
    if (t1 > t2) std::swap(t1, t2);
    double lo = std::max(a.lo, t1), hi = std::min(a.hi, t2);
    if (lo > hi + kExactEps) return ExactIntersection::empty();
    return ExactIntersection::exact(linear_to_shape(LinearForm{a.base, a.dir, lo, std::max(lo, hi)}));
  }
  // non-parallel: closest points of the infinite lines
  const double denom = 1.0 - c * c;
  const double t = (w.dot(a.dir) - c * w.dot(b.dir)) / denom;
  const double s = (c * w.dot(a.dir) - w.dot(b.dir)) / denom;
  const Vec p1 = a.base + t * a.dir;
  const Vec p2 = b.base + s * b.dir;
  if ((p1 - p2).norm() > kExactEps) return ExactIntersection::empty();  // skew or crossing elsewhere
  if (t < a.lo - kExactEps || t > a.hi + kExactEps || s < b.lo - kExactEps || s > b.hi + kExactEps)
    return ExactIntersection::empty();  // crossing outside a feasible range
  const double tc = std::clamp(t, a.lo, a.hi);
  return ExactIntersection::exact(make_points({a.base + tc * a.dir}));
}

// Exact distance between two linear forms (closest approach of the clamped
// parameters; standard segment-distance case analysis).
inline double linear_distance(const LinearForm& a, const LinearForm& b) {
  const double c = a.dir.dot(b.dir);
  const Vec w = b.base - a.base;
  auto point_at = [](const LinearForm& f, double t) -> Vec { return f.base + t * f.dir; };
  auto clamp_to = [](double t, const LinearForm& f) { return std::clamp(t, f.lo, f.hi); };

  if (std::abs(std::abs(c) - 1.0) <= 1e-12) {
    double perp = (w - w.dot(a.dir) * a.dir).norm();
    double shift = w.dot(a.dir);
    double t1 = shift + c * b.lo, t2 = shift + c * b.hi;
    if (t1 > t2) std::swap(t1, t2);
    double lo = std::max(a.lo, t1), hi = std::min(a.hi, t2);
    if (lo <= hi) return perp;  // overlapping shadows: perpendicular gap only
    double gap = lo - hi;       // parameter gap between the shadows
    return std::hypot(perp, gap);
  }

  const double denom = 1.0 - c * c;
  double t = (w.dot(a.dir) - c * w.dot(b.dir)) / denom;
  double s = (c * w.dot(a.dir) - w.dot(b.dir)) / denom;
  double best = kInf;
  auto consider = [&](double ta, double sb) {
    double d = (point_at(a, ta) - point_at(b, sb)).norm();
    best = std::min(best, d);
  };
  // unclamped critical point, then each clamped coordinate re-optimized
  double tc = clamp_to(t, a), sc = clamp_to(s, b);
  consider(tc, clamp_to(b.dir.dot(point_at(a, tc) - b.base), b));
  consider(clamp_to(a.dir.dot(point_at(b, sc) - a.base), a), sc);
  for (double endpoint : {a.lo, a.hi})
    if (std::isfinite(endpoint))
      consider(endpoint, clamp_to(b.dir.dot(point_at(a, endpoint) - b.base), b));
  for (double endpoint : {b.lo, b.hi})
    if (std::isfinite(endpoint))
      consider(clamp_to(a.dir.dot(point_at(b, endpoint) - a.base), a), endpoint);
  return best;
}

inline ExactIntersection intersect_ball_linear(const Ball& ball, const LinearForm& f) {
  const double tc = f.dir.dot(ball.center - f.base);
  const double perp2 = (ball.center - f.base - tc * f.dir).squaredNorm();
  const double h2 = ball.radius * ball.radius - perp2;
  if (h2 < -kExactEps * std::max(1.0, ball.radius)) return ExactIntersection::empty();
  const double h = std::sqrt(std::max(h2, 0.0));
  double lo = std::max(f.lo, tc - h), hi = std::min(f.hi, tc + h);
  if (lo > hi + kExactEps) return ExactIntersection::empty();
  return ExactIntersection::exact(linear_to_shape(LinearForm{f.base, f.dir, lo, std::max(lo, hi)}));
}

inline ExactIntersection intersect_box_linear(const Box& box, const LinearForm& f) {
  double lo = f.lo, hi = f.hi;
  for (int i = 0; i < box.lo.size(); ++i) {
    const double d = f.dir[i];
    if (std::abs(d) <= 1e-15) {
      if (f.base[i] < box.lo[i] - kExactEps || f.base[i] > box.hi[i] + kExactEps)
        return ExactIntersection::empty();
      continue;
    }
    double t1 = (box.lo[i] - f.base[i]) / d, t2 = (box.hi[i] - f.base[i]) / d;
    if (t1 > t2) std::swap(t1, t2);
    lo = std::max(lo, t1);
    hi = std::min(hi, t2);
  }
  if (lo > hi + kExactEps) return ExactIntersection::empty();
  return ExactIntersection::exact(linear_to_shape(LinearForm{f.base, f.dir, lo, std::max(lo, hi)}));
}

inline ExactIntersection intersect_halfspace_linear(const Halfspace& h, const LinearForm& f) {
  const double mu = h.normal.dot(f.dir);
  const double v0 = h.normal.dot(f.base) - h.offset;
  if (std::abs(mu) <= 1e-15) {
    if (v0 > kExactEps) return ExactIntersection::empty();
    return ExactIntersection::exact(linear_to_shape(f));
  }
  // feasible t: v0 + mu * t <= 0
  double bound = -v0 / mu;
  double lo = f.lo, hi = f.hi;
  if (mu > 0)
    hi = std::min(hi, bound);
  else
    lo = std::max(lo, bound);
  if (lo > hi + kExactEps) return ExactIntersection::empty();
  return ExactIntersection::exact(linear_to_shape(LinearForm{f.base, f.dir, lo, std::max(lo, hi)}));
}

inline ExactIntersection intersect_primitive(const Shape& sa, const Shape& sb);

inline ExactIntersection filter_points(const PointList& pl, const Shape& other) {
  std::vector<Vec> kept;
  for (const Vec& p : pl.pts)
    if (distance(other, p) <= kExactEps) kept.push_back(p);
  if (kept.empty()) return ExactIntersection::empty();
  return ExactIntersection::exact(make_points(std::move(kept)));
}

inline ExactIntersection intersect_primitive(const Shape& sa, const Shape& sb) {
  // point lists reduce to an exact membership filter
  if (const PointList* pl = std::get_if<PointList>(&sa.node)) return filter_points(*pl, sb);
  if (const PointList* pl = std::get_if<PointList>(&sb.node)) return filter_points(*pl, sa);

  const auto la = as_linear(sa), lb = as_linear(sb);
  if (la && lb) return intersect_linear(*la, *lb);

  if (const Ball* ball = std::get_if<Ball>(&sa.node)) {
    if (lb) return intersect_ball_linear(*ball, *lb);
    if (const Ball* other = std::get_if<Ball>(&sb.node)) {
      const double d = (ball->center - other->center).norm();
      const double rsum = ball->radius + other->radius;
      if (d > rsum + kExactEps) return ExactIntersection::empty();
      if (std::abs(d - rsum) <= kExactEps && d > kExactEps) {
        Vec touch = ball->center + (ball->radius / d) * (other->center - ball->center);
        return ExactIntersection::exact(make_points({touch}));
      }
      const double rdiff = std::abs(ball->radius - other->radius);
      if (d < rdiff - kExactEps || (d <= kExactEps && rdiff <= kExactEps)) {
        const Ball& inner = (ball->radius <= other->radius) ? *ball : *other;
        return ExactIntersection::exact(make_ball(inner.center, inner.radius));
      }
      return ExactIntersection::unknown();  // lens region
    }
    if (const Halfspace* h = std::get_if<Halfspace>(&sb.node)) {
      const double excess = h->normal.dot(ball->center) - h->offset;
      if (excess > ball->radius + kExactEps) return ExactIntersection::empty();
      if (std::abs(excess - ball->radius) <= kExactEps)
        return ExactIntersection::exact(make_points({ball->center - ball->radius * h->normal}));
      if (excess <= -ball->radius + kExactEps)
        return ExactIntersection::exact(make_ball(ball->center, ball->radius));
      return ExactIntersection::unknown();  // spherical cap
    }
    if (const Box* box = std::get_if<Box>(&sb.node)) {
      Vec clamped = ball->center;
      for (int i = 0; i < clamped.size(); ++i) clamped[i] = std::clamp(clamped[i], box->lo[i], box->hi[i]);
      if ((clamped - ball->center).norm() > ball->radius + kExactEps) return ExactIntersection::empty();
      return ExactIntersection::unknown();
    }
  }
  if (std::get_if<Ball>(&sb.node)) return intersect_primitive(sb, sa);

  if (const Box* box = std::get_if<Box>(&sa.node)) {
    if (lb) return intersect_box_linear(*box, *lb);
    if (const Box* other = std::get_if<Box>(&sb.node)) {
      Vec lo = box->lo, hi = box->hi;
      for (int i = 0; i < lo.size(); ++i) {
        lo[i] = std::max(lo[i], other->lo[i]);
        hi[i] = std::min(hi[i], other->hi[i]);
        if (lo[i] > hi[i] + kExactEps) return ExactIntersection::empty();
        hi[i] = std::max(lo[i], hi[i]);
      }
      return ExactIntersection::exact(make_box(lo, hi));
    }
    if (const Halfspace* h = std::get_if<Halfspace>(&sb.node)) {
      double vmin = -h->offset, vmax = -h->offset;
      for (int i = 0; i < box->lo.size(); ++i) {
        vmin += std::min(h->normal[i] * box->lo[i], h->normal[i] * box->hi[i]);
        vmax += std::max(h->normal[i] * box->lo[i], h->normal[i] * box->hi[i]);
      }
      if (vmin > kExactEps) return ExactIntersection::empty();
      if (vmax <= kExactEps) return ExactIntersection::exact(make_box(box->lo, box->hi));
      return ExactIntersection::unknown();  // clipped polytope
    }
  }
  if (std::get_if<Box>(&sb.node)) return intersect_primitive(sb, sa);

  if (const Halfspace* ha = std::get_if<Halfspace>(&sa.node)) {
    if (lb) return intersect_halfspace_linear(*ha, *lb);
    if (const Halfspace* hb = std::get_if<Halfspace>(&sb.node)) {
      const double c = ha->normal.dot(hb->normal);
      if (c >= 1.0 - 1e-12)
        return ExactIntersection::exact(make_halfspace(ha->normal, std::min(ha->offset, hb->offset)));
      if (c <= -1.0 + 1e-12) {
        // {n.x <= c1} cap {n.x >= -c2}
        if (ha->offset < -hb->offset - kExactEps) return ExactIntersection::empty();
        if (std::abs(ha->offset + hb->offset) <= kExactEps && ha->normal.size() == 2) {
          Vec tangent(2);
          tangent << -ha->normal[1], ha->normal[0];
          return ExactIntersection::exact(make_line(ha->offset * ha->normal, tangent));
        }
        return ExactIntersection::unknown();  // slab
      }
      return ExactIntersection::unknown();  // wedge
    }
  }
  if (std::get_if<Halfspace>(&sb.node)) return intersect_primitive(sb, sa);

  return ExactIntersection::unknown();
}

// Closed-form distance between primitives; nullopt when no closed form exists.
inline std::optional<double> primitive_distance(const Shape& sa, const Shape& sb) {
  if (const PointList* pl = std::get_if<PointList>(&sa.node)) {
    double best = kInf;
    for (const Vec& p : pl->pts) best = std::min(best, distance(sb, p));
    return best;
  }
  if (std::get_if<PointList>(&sb.node)) return primitive_distance(sb, sa);

  const auto la = as_linear(sa), lb = as_linear(sb);
  if (la && lb) return linear_distance(*la, *lb);

  if (const Ball* ball = std::get_if<Ball>(&sa.node)) {
    // other primitives here are convex, so center distance minus radius is exact
    if (std::get_if<Ball>(&sb.node) || std::get_if<Halfspace>(&sb.node) || std::get_if<Box>(&sb.node) || lb)
      return std::max(0.0, distance(sb, ball->center) - ball->radius);
    return std::nullopt;
  }
  if (std::get_if<Ball>(&sb.node)) return primitive_distance(sb, sa);

  if (const Halfspace* h = std::get_if<Halfspace>(&sa.node)) {
    if (lb) {
      const double mu = h->normal.dot(lb->dir);
      const double v0 = h->normal.dot(lb->base) - h->offset;
      double vmin;
      if (std::abs(mu) <= 1e-15) {
        vmin = v0;
      } else {
        // v(t) = v0 + mu*t decreases toward one end of [lo, hi]
        const double t_min = (mu > 0) ? lb->lo : lb->hi;
        vmin = std::isfinite(t_min) ? v0 + mu * t_min : -kInf;
      }
      return std::max(0.0, vmin);
    }
    if (const Box* box = std::get_if<Box>(&sb.node)) {
      double vmin = -h->offset;
      for (int i = 0; i < box->lo.size(); ++i)
        vmin += std::min(h->normal[i] * box->lo[i], h->normal[i] * box->hi[i]);
      return std::max(0.0, vmin);
    }
    if (const Halfspace* hb = std::get_if<Halfspace>(&sb.node)) {
      const double c = h->normal.dot(hb->normal);
      if (c <= -1.0 + 1e-12) return std::max(0.0, -hb->offset - h->offset);
      return 0.0;  // non-antipodal halfspaces always meet
    }
    return std::nullopt;
  }
  if (std::get_if<Halfspace>(&sb.node)) return primitive_distance(sb, sa);

  if (const Box* ba = std::get_if<Box>(&sa.node)) {
    if (const Box* bb = std::get_if<Box>(&sb.node)) {
      double sum2 = 0.0;
      for (int i = 0; i < ba->lo.size(); ++i) {
        double gap = std::max({0.0, bb->lo[i] - ba->hi[i], ba->lo[i] - bb->hi[i]});
        sum2 += gap * gap;
      }
      return std::sqrt(sum2);
    }
    return std::nullopt;  // box-vs-linear kept out of the certified path
  }
  return std::nullopt;
}

}  // namespace detail

// Exact intersection of two shapes, unions expanded pairwise.  Any pair
// without a closed form makes the whole result Unknown.
inline ExactIntersection intersect_exact(const Shape& a, const Shape& b) {
  std::vector<Shape> parts;
  for (const Shape& pa : flatten(a)) {
    for (const Shape& pb : flatten(b)) {
      ExactIntersection r = detail::intersect_primitive(pa, pb);
      if (r.is_unknown()) return ExactIntersection::unknown();
      if (r.is_exact()) parts.push_back(std::move(*r.shape));
    }
  }
  if (parts.empty()) return ExactIntersection::empty();
  if (parts.size() == 1) return ExactIntersection::exact(std::move(parts.front()));
  return ExactIntersection::exact(make_union(std::move(parts)));
}

// Closed-form distance between two sets; nullopt if any branch pair has none.
inline std::optional<double> set_distance_exact(const Shape& a, const Shape& b) {
  double best = std::numeric_limits<double>::infinity();
  for (const Shape& pa : flatten(a)) {
    for (const Shape& pb : flatten(b)) {
      auto d = detail::primitive_distance(pa, pb);
      if (!d) return std::nullopt;
      best = std::min(best, *d);
    }
  }
  return best;
}

}  // namespace tvkit
