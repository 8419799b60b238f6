#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "sdcert/numeric.hpp"
#include "sdcert/quad.hpp"

namespace sdcert {

/// An element of Q(sqrt(g_0), ..., sqrt(g_{k-1})) for non-negative rational
/// generators g_i, stored as 2^k rational coefficients indexed by subsets of
/// generators: coefficient c_S multiplies prod_{i in S} sqrt(g_i).
///
/// The representation need not be canonical (generators may be dependent,
/// e.g. 3 and 12), but the sign procedure is exact regardless: it splits off
/// the last generator, x = alpha + beta*sqrt(g), and when alpha and beta
/// disagree in sign it recurses on alpha^2 - beta^2*g.
class Surd {
 public:
  using Generators = std::shared_ptr<const std::vector<Rational>>;

  explicit Surd(Generators gens);
  Surd(Generators gens, const Rational& r);

  const std::vector<Rational>& generators() const { return *gens_; }
  const Generators& generator_handle() const { return gens_; }
  const std::vector<Rational>& coefficients() const { return c_; }
  std::size_t degree() const { return gens_->size(); }

  Rational& coefficient(std::size_t mask) { return c_[mask]; }
  const Rational& coefficient(std::size_t mask) const { return c_[mask]; }

  /// Rational value when every irrational coefficient vanishes.
  bool is_rational() const;

  Surd operator-() const;
  Surd& operator+=(const Surd& o);
  Surd& operator-=(const Surd& o);
  Surd& operator*=(const Surd& o);
  Surd& operator*=(const Rational& r);

  friend Surd operator+(Surd l, const Surd& r) { return l += r; }
  friend Surd operator-(Surd l, const Surd& r) { return l -= r; }
  friend Surd operator*(Surd l, const Surd& r) { return l *= r; }
  friend Surd operator*(Surd l, const Rational& r) { return l *= r; }
  friend Surd operator*(const Rational& r, Surd l) { return l *= r; }
  friend Surd operator+(Surd l, const Rational& r) {
    l.c_[0] += r;
    return l;
  }
  friend Surd operator-(Surd l, const Rational& r) {
    l.c_[0] -= r;
    return l;
  }

  double approx() const;

  /// Terms as (coefficient, radicand) with radicand = prod of the subset's generators.
  std::vector<std::pair<Rational, Rational>> terms() const;

 private:
  Generators gens_;
  std::vector<Rational> c_;

  void require_same_field(const Surd& o) const;
};

/// Builds elements over a fixed list of generators.
class RadicalField {
 public:
  explicit RadicalField(std::vector<Rational> gens);

  Surd value(const Rational& r) const { return Surd(gens_, r); }
  /// sqrt of the i-th generator.
  Surd root(std::size_t i) const;
  /// Embeds a + b*sqrt(3); requires `sqrt3_index` to name a generator equal to 3.
  Surd quad(const QuadValue& v, std::size_t sqrt3_index) const;

  const Surd::Generators& generators() const { return gens_; }

 private:
  Surd::Generators gens_;
};

int sign(const Surd& x);
int compare(const Surd& x, const Surd& y);

/// sign(x - sqrt(y)) for y >= 0 (throws std::domain_error when y < 0).
int sign_minus_sqrt(const Surd& x, const Surd& y);

Integer floor(const Surd& x);
Integer ceil(const Surd& x);

/// floor(sqrt(y)) for y >= 0.
Integer floor_sqrt(const Surd& y);

std::string to_string(const Surd& x);

}  // namespace sdcert
