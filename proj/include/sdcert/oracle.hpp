#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "sdcert/lattice.hpp"
#include "sdcert/numeric.hpp"

namespace sdcert {

/// Thrown when the enumeration runs out of budget. `bound` is the best
/// twice-area seen so far, an upper bound on S.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(std::int64_t bound, const std::string& what) : std::runtime_error(what), bound(bound) {}
  std::int64_t bound;
};

struct SValue {
  Rational q;
  std::int64_t s = 0;
  std::vector<LatticeTriangle> m_triangles;  ///< canonical forms, sorted
};

struct SlidingWitness {
  LatticePoint o, w, a, b;
  friend bool operator==(const SlidingWitness&, const SlidingWitness&) = default;
};

struct SlidingReport {
  Rational q;
  std::int64_t s = 0;
  bool slides = false;
  std::optional<SlidingWitness> witness;
  std::optional<bool> bound_ok;
};

inline constexpr std::uint64_t kDefaultOracleBudget = 4'000'000'000ULL;

/// Ascending integers in [1, q_max] that are sums of two squares.
std::vector<std::int64_t> critical_values(std::int64_t q_max);

/// Exact S and all M-triangles. Non-integer q is rounded up, since every
/// squared side is an integer.
SValue exact_S(const Rational& q, std::uint64_t budget = kDefaultOracleBudget);

/// Brute force over all triangles with a vertex at the origin and the other
/// two in the box of radius ceil(sqrt(12 q)). Only practical for small q.
SValue exact_S_naive(const Rational& q);

/// Sliding search over all M-triangles and all of their edges.
SlidingReport detect_sliding(const Rational& q);
SlidingReport detect_sliding(const SValue& sv);

/// Exact check of S > sqrt(3)/2 q + sqrt(q)/(2 sqrt(3)) - 1 together with
/// the trapezoid argument on the witness. Throws std::invalid_argument when
/// the report does not slide.
bool check_sliding_bound(const SlidingReport& report);
bool check_sliding_bound(const Rational& q);

}  // namespace sdcert
