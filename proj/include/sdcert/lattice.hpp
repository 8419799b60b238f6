#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <stdexcept>

#include "sdcert/numeric.hpp"
#include "sdcert/quad.hpp"

namespace sdcert {

/// Coordinates are limited to |c| <= 2^29 so that every squared length,
/// determinant and dot product fits comfortably in 64 bits.
inline constexpr std::int64_t kCoordLimit = std::int64_t{1} << 29;

struct LatticePoint {
  std::int64_t x = 0;
  std::int64_t y = 0;

  friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
  friend LatticePoint operator-(LatticePoint a, LatticePoint b) { return {a.x - b.x, a.y - b.y}; }
  friend LatticePoint operator+(LatticePoint a, LatticePoint b) { return {a.x + b.x, a.y + b.y}; }
};

struct LatticeTriangle {
  LatticePoint p0, p1, p2;

  friend auto operator<=>(const LatticeTriangle&, const LatticeTriangle&) = default;
  std::array<LatticePoint, 3> vertices() const { return {p0, p1, p2}; }
};

/// Squared side lengths in ascending order and twice the area.
struct TriangleMetrics {
  std::int64_t s1 = 0, s2 = 0, s3 = 0;
  std::int64_t t = 0;

  friend bool operator==(const TriangleMetrics&, const TriangleMetrics&) = default;
};

class DegenerateTriangle : public std::domain_error {
 public:
  DegenerateTriangle() : std::domain_error("degenerate triangle") {}
};

class NotParallel : public std::invalid_argument {
 public:
  NotParallel() : std::invalid_argument("AB is not parallel to OW") {}
};

std::int64_t cross(LatticePoint a, LatticePoint b);
std::int64_t dot(LatticePoint a, LatticePoint b);
std::int64_t norm_sq(LatticePoint a);

/// Throws std::out_of_range when a coordinate exceeds kCoordLimit.
void check_coordinates(const LatticeTriangle& tri);

std::int64_t twice_area(const LatticeTriangle& tri);
TriangleMetrics squared_sides(const LatticeTriangle& tri);

/// 4t^2 == 4*s1*s2 - (s1 + s2 - s3)^2, evaluated in 128 bits.
bool heron_consistent(const TriangleMetrics& m);

/// Right angles count as non-obtuse. Throws DegenerateTriangle.
bool is_nonobtuse(const LatticeTriangle& tri);
bool is_nonobtuse(const TriangleMetrics& m);

/// Non-obtuse with every squared side >= q. Throws DegenerateTriangle; q must be positive.
bool in_T(const LatticeTriangle& tri, const Rational& q);

/// Image of p under the k-th symmetry of the square lattice, k in [0, 8).
LatticePoint apply_symmetry(int k, LatticePoint p);

/// Lexicographically smallest presentation under translation, the eight
/// lattice symmetries and vertex order. p0 is always the origin.
LatticeTriangle canonical_form(const LatticeTriangle& tri);

struct TrapezoidSums {
  std::int64_t lhs;  ///< |OB|^2 + |AW|^2
  QuadValue rhs;     ///< |AO|^2 + |BW|^2 + 2|AB||OW|
};

/// Both sides of the trapezoid identity for O, A, B, W in that order.
/// Throws NotParallel when B - A is not parallel to W - O, and
/// std::invalid_argument when AB and OW point in opposite directions.
TrapezoidSums trapezoid_sum_check(LatticePoint o, LatticePoint a, LatticePoint b, LatticePoint w);

}  // namespace sdcert
