#pragma once

#include <cmath>
#include <optional>
#include <utility>
#include <vector>

namespace tdg {

// Coincidence / zero-length threshold, in game-length units.
inline constexpr double kDegenerateTol = 1e-12;

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Point2& operator+=(const Point2& o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr Point2& operator-=(const Point2& o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  friend constexpr Point2 operator+(Point2 a, const Point2& b) { return a += b; }
  friend constexpr Point2 operator-(Point2 a, const Point2& b) { return a -= b; }
  friend constexpr Point2 operator-(const Point2& a) { return {-a.x, -a.y}; }
  friend constexpr Point2 operator*(double s, const Point2& a) { return {s * a.x, s * a.y}; }
  friend constexpr Point2 operator*(const Point2& a, double s) { return {s * a.x, s * a.y}; }
  friend constexpr Point2 operator/(const Point2& a, double s) { return {a.x / s, a.y / s}; }
  friend constexpr bool operator==(const Point2&, const Point2&) = default;
};

constexpr double dot(const Point2& a, const Point2& b) { return a.x * b.x + a.y * b.y; }
// z-component of the planar cross product.
constexpr double cross(const Point2& a, const Point2& b) { return a.x * b.y - a.y * b.x; }
inline double norm(const Point2& a) { return std::hypot(a.x, a.y); }
inline double dist(const Point2& a, const Point2& b) { return norm(b - a); }
inline bool is_finite(const Point2& p) { return std::isfinite(p.x) && std::isfinite(p.y); }

struct Circle {
  Point2 center;
  double radius = 0.0;
};

// Closed disk membership.
inline bool in_disk(const Point2& p, const Circle& c) { return dist(p, c.center) <= c.radius; }

struct Segment {
  Point2 a;
  Point2 b;

  Point2 at(double s) const { return a + s * (b - a); }
  double length() const { return dist(a, b); }
};

// Open half-plane of points strictly closer to anchor1 than to anchor2.
struct HalfPlane {
  Point2 anchor1;
  Point2 anchor2;
};

struct Triangle {
  Point2 v1;
  Point2 v2;
  Point2 v3;
};

// Open annulus around `center` intersected with the closed triangle `clip`.
struct AnnularSector {
  Point2 center;
  double rho_inner = 0.0;
  double rho_outer = 0.0;
  Triangle clip;
};

// Throws DegenerateDirection when the points coincide within kDegenerateTol.
Point2 unit_vector(const Point2& from, const Point2& to);
// Non-throwing variant; nullopt when the points coincide.
std::optional<Point2> try_unit_vector(const Point2& from, const Point2& to);

// Points of s on the boundary of c, ordered by arclength from s.a.
// A tangent contact yields a single point.
std::vector<Point2> segment_circle_intersections(const Segment& s, const Circle& c);

// Parameter interval [lo, hi] ⊂ [0, 1] of the part of s inside the closed disk c.
std::optional<std::pair<double, double>> segment_disk_interval(const Segment& s,
                                                               const Circle& c);

double distance_to_segment(const Point2& p, const Segment& s);

bool in_half_plane(const Point2& p, const HalfPlane& h);

// Closed triangle. Collinear triangles reduce to their covering segment.
bool in_triangle(const Point2& p, const Triangle& t);
double distance_to_triangle(const Point2& p, const Triangle& t);

bool in_annular_sector(const Point2& p, const AnnularSector& s);
// Membership in the closure of s, inflated by tol.
bool in_annular_sector_closure(const Point2& p, const AnnularSector& s, double tol);

}  // namespace tdg
