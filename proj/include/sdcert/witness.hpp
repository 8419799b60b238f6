#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sdcert/lattice.hpp"
#include "sdcert/numeric.hpp"
#include "sdcert/quad.hpp"
#include "sdcert/surd.hpp"

namespace sdcert {

/// Structural problem in a certificate (as opposed to a failed inequality).
class VerificationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// x and y are half-integers stored doubled.
struct PairWitness {
  std::int64_t x2 = 0;
  std::int64_t y2 = 0;
  Rational norm_sq;              ///< x^2 + y^2
  QuadValue eps;                 ///< tolerance the pair was selected for
  std::optional<Rational> slack; ///< x^2 + y^2 - N when N is rational

  Rational x() const { return Rational(x2, 2); }
  Rational y() const { return Rational(y2, 2); }
};

enum class CertificateKind {
  Reduction,  ///< eps-approximate equilateral triangle with rational eps
  Explicit,   ///< fixed eps = (3*sqrt(3) - 5)/2 and delta = 13/100
};

std::string to_string(CertificateKind k);
CertificateKind certificate_kind_from_string(const std::string& s);

/// A sum of terms coeff * sqrt(radicand).
using RadicalTerms = std::vector<std::pair<Rational, Rational>>;

struct WitnessCertificate {
  CertificateKind kind = CertificateKind::Reduction;
  Rational q;
  QuadValue eps;
  PairWitness pair;
  std::int64_t z = 0;
  std::int64_t t = 0;
  LatticeTriangle triangle;  ///< (0,0), (2x, 2y), (z, t)
  std::int64_t twice_area = 0;
  RadicalTerms bound_rhs;
};

struct CertificateCheck {
  bool ok = true;
  std::string failed;  ///< name of the first failing check
};

inline const Rational kExplicitDelta{13, 100};

/// Integers x, y with ||sqrt(3)x|| < eps, ||sqrt(3)y|| < eps and x^2 + y^2 >= N:
/// the largest valid x <= sqrt(N), then the smallest valid y >= sqrt(N - x^2).
PairWitness find_pair(const Rational& n, const Rational& eps);

/// Integer pair (x, y) with ||sqrt(3)x||, ||sqrt(3)y|| < eps and
/// 2 sqrt(x^2+y^2) in [D + sqrt(2) eps, D + 2 eps]; x ascending, then y ascending.
/// Requires q >= 100 and 0 < eps < 1/2. Returns nullopt when no pair exists.
std::optional<WitnessCertificate> build_witness(const Rational& q, const Rational& eps);

/// Same bound with half-integer (x, y), requiring the rounded apex to be within
/// eps of the exact one in each coordinate. Returns the pair of least area.
std::optional<WitnessCertificate> build_witness_half(const Rational& q, const Rational& eps);

/// Half-integer pair for N > 1000 with ||x - sqrt(3)y|| < eps, ||y + sqrt(3)x|| < eps/2
/// and x^2 + y^2 in [N, N + f(N)], eps = (3*sqrt(3) - 5)/2.
PairWitness find_halfint_pair(const Rational& n);

/// x^2 + y^2 - N <= f(N) and y <= 7 + (7 sqrt(N) - 49/4)^(1/2), exactly.
bool halfint_pair_within_reach(const Rational& n, const PairWitness& p);

/// Certificate at fixed eps = (3*sqrt(3) - 5)/2, delta = 13/100; q > 10^6.
std::optional<WitnessCertificate> build_witness_explicit(const Rational& q);

/// N + f(N) <= ((D + delta)/2)^2 for N = ((D + sqrt(5)/2 eps)/2)^2.
bool explicit_feasible(const Rational& q);

/// The eps tried at step j: (1/16) q^(-1/10) 2^j rounded down to a multiple of 10^-6, capped at 49/100.
Rational best_bound_eps(const Rational& q, int j);

struct BestBound {
  WitnessCertificate cert;
  int attempts = 0;
};

/// Escalates eps until build_witness_half succeeds. Throws SearchCapExceeded.
BestBound best_bound(const Rational& q);

/// Recomputes every condition from the raw fields. Throws VerificationError on
/// structurally invalid input.
CertificateCheck check_certificate(const WitnessCertificate& cert);
bool verify_certificate(const WitnessCertificate& cert);

/// Right-hand side of the certificate's bound, in the certificate's field.
Surd certificate_bound(const WitnessCertificate& cert);

/// Sign of twice_area - (sqrt(3)/2 q + sqrt(q)/(2 sqrt(3)) - 1).
int compare_small_d_bound(const Integer& twice_area, const Rational& q);

/// Sign of twice_area - sqrt(3)/2 q.
int compare_main_term(const Integer& twice_area, const Rational& q);

/// Nearest integer to (a + b sqrt(3))/2, for b != 0 or a even.
std::int64_t nearest_half_sqrt3(std::int64_t a, std::int64_t b);

}  // namespace sdcert
