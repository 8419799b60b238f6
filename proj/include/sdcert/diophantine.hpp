#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "sdcert/numeric.hpp"
#include "sdcert/quad.hpp"

namespace sdcert {

/// Thrown when a search that is guaranteed to terminate runs past its configured cap.
class SearchCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A solution of 3v^2 - 2 = u^2.
struct PellSolution {
  Integer v;
  Integer u;

  friend bool operator==(const PellSolution&, const PellSolution&) = default;
};

struct WindowWitness {
  Integer s;
  QuadValue frac;  ///< {s*sqrt(3)} (or {s*sqrt(3) + shift}), in [0, 1)
};

inline constexpr std::uint64_t kDefaultSearchCap = 100'000'000;

std::vector<PellSolution> pell_stream(std::size_t count);

/// {v*sqrt(3)} > 1/(3v), decided exactly.
bool frac_lower_bound_check(const PellSolution& sol);

/// Smallest s >= 1 with {s*sqrt(3)} in the closed window [lo, hi], 0 <= lo < hi <= 1.
/// Uses an exact descent on the rotation by {sqrt(3)}; independent of the scan below.
WindowWitness min_multiplier_in_window(const Rational& lo, const Rational& hi);

/// Reference implementation: ascending scan with exact window tests.
WindowWitness min_multiplier_in_window_scan(const Rational& lo, const Rational& hi,
                                            std::uint64_t cap = kDefaultSearchCap);

/// Largest k <= n with ||k*sqrt(3)|| < eps, eps in (0, 1). Returns k = 0 for n <= 0.
WindowWitness largest_below(const Integer& n, const Rational& eps, std::uint64_t cap = kDefaultSearchCap);

/// Smallest k >= n with ||k*sqrt(3)|| < eps.
WindowWitness smallest_above(const Integer& n, const Rational& eps, std::uint64_t cap = kDefaultSearchCap);

enum class Grid {
  Integers,      ///< Z
  HalfIntegers,  ///< (1/2)Z
  OddHalves,     ///< Z + 1/2
};

std::string to_string(Grid g);
Grid grid_from_string(const std::string& s);

/// Starting from `top`, the largest usable grid point of a segment of length at
/// least 7, returns g = top - s for the s in {0..6} minimizing ||g*sqrt(3) + shift||
/// (ties go to the smaller s). The distance never exceeds (3*sqrt(3) - 5)/2.
Rational grid_point_from_top(const Rational& top, const Rational& shift);

/// A grid point g in [j_lo, j_hi] with ||g*sqrt(3) + shift|| <= (3*sqrt(3) - 5)/2.
/// Throws std::invalid_argument when j_hi - j_lo < 7.
Rational grid_point_in_segment(const Rational& j_lo, const Rational& j_hi, const Rational& shift, Grid grid);

/// Largest circular gap among 0, {sqrt(3)}, ..., {6*sqrt(3)}.
QuadValue seven_gap();

/// The seven points {s*sqrt(3)} for s = 0..6, sorted.
std::vector<QuadValue> seven_points_sorted();

/// ||n*sqrt(3)|| < eps for rational eps in (0, 1).
bool near_multiple(const Integer& n, const Rational& eps);
bool near_multiple(std::int64_t n, const Rational& eps);

}  // namespace sdcert
