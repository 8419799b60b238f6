#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sdcert/numeric.hpp"
#include "sdcert/oracle.hpp"
#include "sdcert/quad.hpp"

namespace sdcert {

/// An empty stretch between two consecutive values 2 sqrt(x^2 + y^2). The
/// endpoints are sqrt(lo_sq) and sqrt(hi_sq), with lo_sq = 4 R.
struct Gap {
  std::int64_t lo_sq = 0;
  std::int64_t hi_sq = 0;
  double width = 0;
};

struct CoverReport {
  std::int64_t x_max = 0;
  Rational eps;
  std::int64_t list_size = 0;
  Rational bin_width;
  Rational window_lo;
  Rational covered_lo;
  Rational covered_hi;
  std::vector<Gap> gaps;  ///< violations inside the fully enumerated range
  std::uint64_t pairs = 0;
  double duration_seconds = 0;
};

struct CoverOptions {
  std::optional<Rational> bin_width;
  std::optional<Rational> window_lo;  ///< default x_max / 3
  unsigned threads = 1;
  std::string checkpoint;  ///< path prefix; empty disables checkpointing
  std::size_t checkpoint_every = 256;
};

/// x in [1, x_max] with ||sqrt(3) x|| < eps, ascending.
std::vector<std::int64_t> valid_list(std::int64_t x_max, const Rational& eps);

/// Largest multiple of 1/10^4 not exceeding (2 - sqrt(2)) eps / 2.
Rational default_bin_width(const Rational& eps);

/// Throws std::invalid_argument on a bad bin width or x_max < 100.
CoverReport cover_scan(std::int64_t x_max, const Rational& eps, const CoverOptions& opt = {});

struct StepRow {
  std::int64_t min_side_sq = 0;
  std::int64_t twice_area = 0;
  LatticeTriangle triangle;
};

struct SegmentFailure {
  std::int64_t q_first;   ///< smallest critical q of the segment that was tested
  std::int64_t q_end;     ///< segment upper end (a row's min_side_sq)
  std::int64_t bound;     ///< the row's twice_area
};

struct StepTable {
  std::int64_t r_max = 0;
  Rational tol;
  std::vector<StepRow> rows;  ///< min_side_sq descending, twice_area descending
  std::uint64_t triangle_count = 0;
  std::int64_t list_size = 0;
  double duration_seconds = 0;
};

struct TableCheck {
  std::int64_t q_lo = 0;
  std::int64_t q_hi = 0;
  std::uint64_t segments_checked = 0;
  std::vector<SegmentFailure> failures;
  bool uncovered = false;  ///< q_hi exceeds the largest row
  bool ok() const { return failures.empty() && !uncovered; }
};

struct TableOptions {
  unsigned threads = 1;
  std::string checkpoint;
  std::size_t checkpoint_every = 64;
};

/// x in [0, sqrt(r_max)] with ||2 sqrt(3) x|| <= tol.
std::vector<std::int64_t> table_list(std::int64_t r_max, const Rational& tol);

StepTable triangle_table(std::int64_t r_max, const Rational& tol, const TableOptions& opt = {});

/// The table's bound at q: twice_area of the row with the least min_side_sq >= q.
std::optional<std::int64_t> table_bound(const StepTable& table, std::int64_t q);

/// Exact small-D inequality for every critical q in [q_lo, q_hi].
TableCheck check_table(const StepTable& table, std::int64_t q_lo, std::int64_t q_hi);

inline const Rational kSmallDStart{4'000'000};

struct ResidualRow {
  Rational q;
  Rational eps_used;
  int attempts = 0;
  std::int64_t twice_area = 0;
  int residual_sign = 0;      ///< sign of twice_area - sqrt(3)/2 q
  double residual = 0;        ///< twice_area - sqrt(3)/2 q, rounded
  bool certificate_ok = false;
  std::optional<bool> small_d_bound_ok;  ///< set when q >= 4 10^6
};

/// q_i = round(d2_min (d2_max / d2_min)^(i / (points - 1))).
std::vector<Rational> log_spaced_q(const Rational& d2_min, const Rational& d2_max, int points);

std::vector<ResidualRow> residual_scan(const std::vector<Rational>& q_list, unsigned threads = 1);

struct SlidingScan {
  std::int64_t q_max = 0;
  std::vector<SlidingReport> reports;  ///< one per critical q, ascending
  std::vector<std::int64_t> sliding() const;
  bool all_bounds_ok() const;
};

SlidingScan sliding_scan(std::int64_t q_max, unsigned threads = 1);

}  // namespace sdcert
