#pragma once

// Exact distance/projection oracles for a closed family of shapes in R^n.
//
// Every oracle is closed-form: a projection is computed by direct formula
// (clamped line parameter, radial clamp, componentwise clamp, argmin over a
// finite list) and a distance is always the norm of "point minus projection"
// along the same arithmetic path.  Shapes are immutable values; all functions
// here are pure and safe to call concurrently.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace tvkit {

using Vec = Eigen::VectorXd;

constexpr double kUnitNormTol = 1e-12;

// ---------------------------------------------------------------------------
// Shape variants
// ---------------------------------------------------------------------------

struct Line {
  Vec point;  // any point on the line
  Vec dir;    // unit direction
};

struct Ray {
  Vec origin;
  Vec dir;  // unit direction
};

struct Segment {
  Vec from;
  Vec to;
};

// {x : normal . x <= offset}, normal has unit norm
struct Halfspace {
  Vec normal;
  double offset = 0.0;
};

struct Ball {
  Vec center;
  double radius = 0.0;  // solid ball, radius >= 0
};

struct Box {
  Vec lo;
  Vec hi;  // lo <= hi componentwise
};

struct PointList {
  std::vector<Vec> pts;  // nonempty
};

struct Shape;

struct Union {
  std::vector<Shape> parts;  // nonempty; projection ties break to the
                             // smallest part index
};

struct Shape {
  std::variant<Line, Ray, Segment, Halfspace, Ball, Box, PointList, Union> node;
};

inline Shape make_line(Vec point, Vec dir) { return Shape{Line{std::move(point), std::move(dir)}}; }
inline Shape make_ray(Vec origin, Vec dir) { return Shape{Ray{std::move(origin), std::move(dir)}}; }
inline Shape make_segment(Vec from, Vec to) { return Shape{Segment{std::move(from), std::move(to)}}; }
inline Shape make_halfspace(Vec normal, double offset) { return Shape{Halfspace{std::move(normal), offset}}; }
inline Shape make_ball(Vec center, double radius) { return Shape{Ball{std::move(center), radius}}; }
inline Shape make_box(Vec lo, Vec hi) { return Shape{Box{std::move(lo), std::move(hi)}}; }
inline Shape make_points(std::vector<Vec> pts) { return Shape{PointList{std::move(pts)}}; }
inline Shape make_union(std::vector<Shape> parts) { return Shape{Union{std::move(parts)}}; }

// ---------------------------------------------------------------------------
// Introspection
// ---------------------------------------------------------------------------

inline int dim(const Shape& s) {
  return std::visit(
      [](const auto& v) -> int {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Line>) return static_cast<int>(v.point.size());
        else if constexpr (std::is_same_v<T, Ray>) return static_cast<int>(v.origin.size());
        else if constexpr (std::is_same_v<T, Segment>) return static_cast<int>(v.from.size());
        else if constexpr (std::is_same_v<T, Halfspace>) return static_cast<int>(v.normal.size());
        else if constexpr (std::is_same_v<T, Ball>) return static_cast<int>(v.center.size());
        else if constexpr (std::is_same_v<T, Box>) return static_cast<int>(v.lo.size());
        else if constexpr (std::is_same_v<T, PointList>) return static_cast<int>(v.pts.front().size());
        else return v.parts.empty() ? 0 : dim(v.parts.front());
      },
      s.node);
}

// Validates structural invariants (unit directions, corner ordering,
// nonemptiness, consistent dimension).  Throws std::invalid_argument with a
// human-readable message on the first violation.
inline void check_shape(const Shape& s, int expected_dim) {
  auto expect_dim = [&](const Vec& v, const char* what) {
    if (static_cast<int>(v.size()) != expected_dim)
      throw std::invalid_argument(std::string(what) + ": dimension mismatch");
    if (!v.allFinite()) throw std::invalid_argument(std::string(what) + ": non-finite coordinate");
  };
  auto expect_unit = [&](const Vec& v, const char* what) {
    expect_dim(v, what);
    if (std::abs(v.norm() - 1.0) > kUnitNormTol)
      throw std::invalid_argument(std::string(what) + ": vector must have unit norm");
  };
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Line>) {
          expect_dim(v.point, "line.point");
          expect_unit(v.dir, "line.direction");
        } else if constexpr (std::is_same_v<T, Ray>) {
          expect_dim(v.origin, "ray.origin");
          expect_unit(v.dir, "ray.direction");
        } else if constexpr (std::is_same_v<T, Segment>) {
          expect_dim(v.from, "segment.from");
          expect_dim(v.to, "segment.to");
        } else if constexpr (std::is_same_v<T, Halfspace>) {
          expect_unit(v.normal, "halfspace.normal");
          if (!std::isfinite(v.offset)) throw std::invalid_argument("halfspace.offset: non-finite");
        } else if constexpr (std::is_same_v<T, Ball>) {
          expect_dim(v.center, "ball.center");
          if (!(v.radius >= 0.0)) throw std::invalid_argument("ball.radius: must be >= 0");
        } else if constexpr (std::is_same_v<T, Box>) {
          expect_dim(v.lo, "box.min");
          expect_dim(v.hi, "box.max");
          for (int i = 0; i < expected_dim; ++i)
            if (v.lo[i] > v.hi[i]) throw std::invalid_argument("box: min > max on component " + std::to_string(i));
        } else if constexpr (std::is_same_v<T, PointList>) {
          if (v.pts.empty()) throw std::invalid_argument("points: list must be nonempty");
          for (const Vec& p : v.pts) expect_dim(p, "points.list entry");
        } else {  // Union
          if (v.parts.empty()) throw std::invalid_argument("union: must be nonempty");
          for (const Shape& part : v.parts) check_shape(part, expected_dim);
        }
      },
      s.node);
}

// ---------------------------------------------------------------------------
// Projection / distance / membership
// ---------------------------------------------------------------------------

namespace detail {

inline void require_dim(const Vec& p, int d, const char* op) {
  if (static_cast<int>(p.size()) != d)
    throw std::invalid_argument(std::string(op) + ": point dimension does not match shape dimension");
}

}  // namespace detail

inline Vec project(const Shape& s, const Vec& p);

namespace detail {

inline Vec project_line_param(const Vec& base, const Vec& dir, const Vec& p, double lo, double hi) {
  double t = dir.dot(p - base);
  t = std::clamp(t, lo, hi);
  return base + t * dir;
}

}  // namespace detail

inline Vec project(const Shape& s, const Vec& p) {
  detail::require_dim(p, dim(s), "project");
  constexpr double inf = std::numeric_limits<double>::infinity();
  return std::visit(
      [&](const auto& v) -> Vec {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Line>) {
          return detail::project_line_param(v.point, v.dir, p, -inf, inf);
        } else if constexpr (std::is_same_v<T, Ray>) {
          return detail::project_line_param(v.origin, v.dir, p, 0.0, inf);
        } else if constexpr (std::is_same_v<T, Segment>) {
          Vec d = v.to - v.from;
          double len = d.norm();
          if (len == 0.0) return v.from;
          d /= len;
          return detail::project_line_param(v.from, d, p, 0.0, len);
        } else if constexpr (std::is_same_v<T, Halfspace>) {
          double excess = v.normal.dot(p) - v.offset;
          if (excess <= 0.0) return p;
          return p - excess * v.normal;
        } else if constexpr (std::is_same_v<T, Ball>) {
          Vec d = p - v.center;
          double n = d.norm();
          if (n <= v.radius) return p;
          return v.center + (v.radius / n) * d;
        } else if constexpr (std::is_same_v<T, Box>) {
          Vec q = p;
          for (int i = 0; i < q.size(); ++i) q[i] = std::clamp(q[i], v.lo[i], v.hi[i]);
          return q;
        } else if constexpr (std::is_same_v<T, PointList>) {
          const Vec* best = &v.pts.front();
          double best_d = (p - *best).norm();
          for (std::size_t i = 1; i < v.pts.size(); ++i) {
            double d = (p - v.pts[i]).norm();
            if (d < best_d) {
              best_d = d;
              best = &v.pts[i];
            }
          }
          return *best;
        } else {  // Union: ties break to the smallest part index
          Vec best = project(v.parts.front(), p);
          double best_d = (p - best).norm();
          for (std::size_t i = 1; i < v.parts.size(); ++i) {
            Vec q = project(v.parts[i], p);
            double d = (p - q).norm();
            if (d < best_d) {
              best_d = d;
              best = std::move(q);
            }
          }
          return best;
        }
      },
      s.node);
}

inline double distance(const Shape& s, const Vec& p) { return (p - project(s, p)).norm(); }

inline bool contains(const Shape& s, const Vec& p, double tol) {
  if (tol < 0.0) throw std::invalid_argument("contains: tol must be >= 0");
  return distance(s, p) <= tol;
}

// ---------------------------------------------------------------------------
// Translation: result represents {s + v : s in shape}, so that
// distance(result, p) == distance(shape, p - v).
// ---------------------------------------------------------------------------

inline Shape translate_shape(const Shape& s, const Vec& v) {
  detail::require_dim(v, dim(s), "translate_shape");
  return std::visit(
      [&](const auto& node) -> Shape {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, Line>) {
          return make_line(node.point + v, node.dir);
        } else if constexpr (std::is_same_v<T, Ray>) {
          return make_ray(node.origin + v, node.dir);
        } else if constexpr (std::is_same_v<T, Segment>) {
          return make_segment(node.from + v, node.to + v);
        } else if constexpr (std::is_same_v<T, Halfspace>) {
          return make_halfspace(node.normal, node.offset + node.normal.dot(v));
        } else if constexpr (std::is_same_v<T, Ball>) {
          return make_ball(node.center + v, node.radius);
        } else if constexpr (std::is_same_v<T, Box>) {
          return make_box(node.lo + v, node.hi + v);
        } else if constexpr (std::is_same_v<T, PointList>) {
          std::vector<Vec> pts;
          pts.reserve(node.pts.size());
          for (const Vec& p : node.pts) pts.push_back(p + v);
          return make_points(std::move(pts));
        } else {
          std::vector<Shape> parts;
          parts.reserve(node.parts.size());
          for (const Shape& part : node.parts) parts.push_back(translate_shape(part, v));
          return make_union(std::move(parts));
        }
      },
      s.node);
}

// ---------------------------------------------------------------------------
// Flattening into primitive branches (unions expanded, order preserved)
// ---------------------------------------------------------------------------

inline void flatten_into(const Shape& s, std::vector<Shape>& out) {
  if (const Union* u = std::get_if<Union>(&s.node)) {
    for (const Shape& part : u->parts) flatten_into(part, out);
  } else {
    out.push_back(s);
  }
}

inline std::vector<Shape> flatten(const Shape& s) {
  std::vector<Shape> out;
  flatten_into(s, out);
  return out;
}

inline bool is_point_list(const Shape& s) { return std::holds_alternative<PointList>(s.node); }

// Distance from p to the shape with any point-list entry equal to p removed.
// Returns 0 if p lies on a continuum branch, +infinity for a set whose only
// point is p itself.  Used to certify that a member point is isolated.
inline double isolation_radius(const Shape& s, const Vec& p, double eq_tol = 1e-12) {
  double r = std::numeric_limits<double>::infinity();
  for (const Shape& branch : flatten(s)) {
    if (const PointList* pl = std::get_if<PointList>(&branch.node)) {
      for (const Vec& q : pl->pts) {
        double d = (p - q).norm();
        if (d <= eq_tol) continue;  // the point itself
        r = std::min(r, d);
      }
    } else {
      double d = distance(branch, p);
      if (d <= eq_tol) return 0.0;  // p sits on a continuum branch
      r = std::min(r, d);
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Low-discrepancy feasible sampling
// ---------------------------------------------------------------------------

namespace detail {

inline double halton(std::uint64_t index, int base) {
  double f = 1.0, r = 0.0;
  while (index > 0) {
    f /= base;
    r += f * static_cast<double>(index % base);
    index /= base;
  }
  return r;
}

inline int nth_prime(int i) {
  static const int primes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29,
                               31, 37, 41, 43, 47, 53, 59, 61, 67, 71};
  if (i < 0 || i >= static_cast<int>(sizeof(primes) / sizeof(primes[0])))
    throw std::invalid_argument("sample_near: dimension too large for the Halton basis");
  return primes[i];
}

}  // namespace detail

// Projects a Halton point cloud in the closed ball B(center, radius) onto the
// shape.  Keeps only projections that land back inside the ball, dedups exact
// duplicates, and always tries the projection of the center first.  The
// result is empty exactly when the shape misses the ball, and is a
// deterministic function of (shape, center, radius, count, seed).
inline std::vector<Vec> sample_near(const Shape& s, const Vec& center, double radius, int count,
                                    std::uint64_t seed) {
  if (!(radius > 0.0)) throw std::invalid_argument("sample_near: radius must be > 0");
  if (count < 1) throw std::invalid_argument("sample_near: count must be >= 1");
  detail::require_dim(center, dim(s), "sample_near");
  const int n = static_cast<int>(center.size());

  std::vector<Vec> out;
  out.reserve(static_cast<std::size_t>(count));
  auto push_unique = [&](Vec q) {
    if ((q - center).norm() > radius) return;
    for (const Vec& have : out)
      if (have == q) return;
    out.push_back(std::move(q));
  };

  push_unique(project(s, center));

  const std::uint64_t start = 1 + (seed % 1000003ULL) * 911ULL;
  const std::uint64_t attempts = 64ULL * static_cast<std::uint64_t>(count) + 64ULL;
  Vec z(n);
  for (std::uint64_t i = 0; i < attempts && static_cast<int>(out.size()) < count; ++i) {
    for (int k = 0; k < n; ++k) z[k] = 2.0 * detail::halton(start + i, detail::nth_prime(k)) - 1.0;
    if (z.norm() > 1.0) continue;  // rejection-sample the unit ball
    push_unique(project(s, center + radius * z));
  }
  return out;
}

}  // namespace tvkit
