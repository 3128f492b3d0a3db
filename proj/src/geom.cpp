#include "tdg/geom.hpp"

#include <algorithm>
#include <array>

#include "tdg/errors.hpp"

namespace tdg {

std::optional<Point2> try_unit_vector(const Point2& from, const Point2& to) {
  const Point2 d = to - from;
  const double n = norm(d);
  if (n <= kDegenerateTol) return std::nullopt;
  return d / n;
}

Point2 unit_vector(const Point2& from, const Point2& to) {
  if (auto u = try_unit_vector(from, to)) return *u;
  throw DegenerateDirection();
}

namespace {

// Roots of |s.a + t (s.b - s.a) - c|^2 = r^2 in t, ascending. Empty if the
// supporting line misses the circle; a double root is reported once.
std::vector<double> line_circle_params(const Segment& s, const Circle& c) {
  const Point2 d = s.b - s.a;
  const Point2 f = s.a - c.center;
  const double qa = dot(d, d);
  const double qb = dot(f, d);
  const double qc = dot(f, f) - c.radius * c.radius;
  if (qa <= kDegenerateTol * kDegenerateTol) return {};
  const double disc = qb * qb - qa * qc;
  if (disc < 0.0) return {};
  if (disc == 0.0) return {-qb / qa};
  const double sq = std::sqrt(disc);
  // Numerically stable pairing of the two roots.
  const double q = -(qb + std::copysign(sq, qb));
  double t1 = q / qa;
  double t2 = (q != 0.0) ? qc / q : -t1;
  if (t1 > t2) std::swap(t1, t2);
  return {t1, t2};
}

constexpr double kParamSlack = 1e-12;

}  // namespace

std::vector<Point2> segment_circle_intersections(const Segment& s, const Circle& c) {
  std::vector<Point2> out;
  if (s.length() <= kDegenerateTol) {
    if (std::abs(dist(s.a, c.center) - c.radius) <= kDegenerateTol) out.push_back(s.a);
    return out;
  }
  for (double t : line_circle_params(s, c)) {
    if (t < -kParamSlack || t > 1.0 + kParamSlack) continue;
    out.push_back(s.at(std::clamp(t, 0.0, 1.0)));
  }
  return out;
}

std::optional<std::pair<double, double>> segment_disk_interval(const Segment& s,
                                                               const Circle& c) {
  if (s.length() <= kDegenerateTol) {
    if (in_disk(s.a, c)) return std::pair{0.0, 1.0};
    return std::nullopt;
  }
  const auto roots = line_circle_params(s, c);
  if (roots.empty()) return std::nullopt;
  const double lo = std::max(roots.front(), 0.0);
  const double hi = std::min(roots.back(), 1.0);
  if (lo > hi) return std::nullopt;
  return std::pair{lo, hi};
}

double distance_to_segment(const Point2& p, const Segment& s) {
  const Point2 d = s.b - s.a;
  const double len2 = dot(d, d);
  if (len2 <= kDegenerateTol * kDegenerateTol) return dist(p, s.a);
  const double t = std::clamp(dot(p - s.a, d) / len2, 0.0, 1.0);
  return dist(p, s.at(t));
}

bool in_half_plane(const Point2& p, const HalfPlane& h) {
  return dist(p, h.anchor1) < dist(p, h.anchor2);
}

namespace {

// Longest edge of a collinear triangle; it covers the other two.
Segment covering_segment(const Triangle& t) {
  const std::array<Segment, 3> edges{Segment{t.v1, t.v2}, Segment{t.v2, t.v3},
                                     Segment{t.v3, t.v1}};
  return *std::max_element(edges.begin(), edges.end(), [](const Segment& a, const Segment& b) {
    return a.length() < b.length();
  });
}

bool is_collinear(const Triangle& t) {
  const Point2 e1 = t.v2 - t.v1;
  const Point2 e2 = t.v3 - t.v1;
  const double scale = std::max({norm(e1), norm(e2), norm(t.v3 - t.v2)});
  return std::abs(cross(e1, e2)) <= kDegenerateTol * std::max(scale * scale, 1.0);
}

}  // namespace

bool in_triangle(const Point2& p, const Triangle& t) {
  if (is_collinear(t)) return distance_to_segment(p, covering_segment(t)) <= kDegenerateTol;
  const double d1 = cross(t.v2 - t.v1, p - t.v1);
  const double d2 = cross(t.v3 - t.v2, p - t.v2);
  const double d3 = cross(t.v1 - t.v3, p - t.v3);
  const bool has_neg = d1 < 0.0 || d2 < 0.0 || d3 < 0.0;
  const bool has_pos = d1 > 0.0 || d2 > 0.0 || d3 > 0.0;
  return !(has_neg && has_pos);
}

double distance_to_triangle(const Point2& p, const Triangle& t) {
  if (!is_collinear(t) && in_triangle(p, t)) return 0.0;
  return std::min({distance_to_segment(p, {t.v1, t.v2}), distance_to_segment(p, {t.v2, t.v3}),
                   distance_to_segment(p, {t.v3, t.v1})});
}

bool in_annular_sector(const Point2& p, const AnnularSector& s) {
  const double r = dist(p, s.center);
  return s.rho_inner < r && r < s.rho_outer && in_triangle(p, s.clip);
}

bool in_annular_sector_closure(const Point2& p, const AnnularSector& s, double tol) {
  const double r = dist(p, s.center);
  return r >= s.rho_inner - tol && r <= s.rho_outer + tol && distance_to_triangle(p, s.clip) <= tol;
}

}  // namespace tdg
