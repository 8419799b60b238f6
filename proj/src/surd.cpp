#include "sdcert/surd.hpp"

#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace sdcert {

namespace {

using Coeffs = std::vector<Rational>;

Rational subset_product(const std::vector<Rational>& gens, std::size_t mask) {
  Rational p = 1;
  for (std::size_t i = 0; mask != 0; ++i, mask >>= 1)
    if (mask & 1U) p *= gens[i];
  return p;
}

// Product in the field generated by the first `k` generators.
Coeffs multiply(const Coeffs& x, const Coeffs& y, const std::vector<Rational>& gens, std::size_t k) {
  const std::size_t n = std::size_t{1} << k;
  Coeffs out(n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (y[j] == 0) continue;
      Rational term = x[i] * y[j];
      if (std::size_t common = i & j; common != 0) term *= subset_product(gens, common);
      out[i ^ j] += term;
    }
  }
  return out;
}

int sign_rec(const Coeffs& c, const std::vector<Rational>& gens, std::size_t k) {
  if (k == 0) return c[0].sign();
  const std::size_t half = std::size_t{1} << (k - 1);
  Coeffs alpha(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(half));
  Coeffs beta(c.begin() + static_cast<std::ptrdiff_t>(half), c.end());
  const Rational& g = gens[k - 1];
  const int sa = sign_rec(alpha, gens, k - 1);
  const int sb = g == 0 ? 0 : sign_rec(beta, gens, k - 1);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  Coeffs a2 = multiply(alpha, alpha, gens, k - 1);
  Coeffs b2 = multiply(beta, beta, gens, k - 1);
  for (std::size_t i = 0; i < half; ++i) a2[i] -= b2[i] * g;
  return sa * sign_rec(a2, gens, k - 1);
}

}  // namespace

Surd::Surd(Generators gens) : gens_(std::move(gens)), c_(std::size_t{1} << gens_->size(), Rational(0)) {
  if (gens_->size() > 8) throw std::invalid_argument("too many radical generators");
}

Surd::Surd(Generators gens, const Rational& r) : Surd(std::move(gens)) { c_[0] = r; }

bool Surd::is_rational() const {
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

void Surd::require_same_field(const Surd& o) const {
  if (gens_ != o.gens_ && *gens_ != *o.gens_) throw std::invalid_argument("Surd operands from different fields");
}

Surd Surd::operator-() const {
  Surd r(*this);
  for (auto& v : r.c_) v = -v;
  return r;
}

Surd& Surd::operator+=(const Surd& o) {
  require_same_field(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Surd& Surd::operator-=(const Surd& o) {
  require_same_field(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

Surd& Surd::operator*=(const Surd& o) {
  require_same_field(o);
  c_ = multiply(c_, o.c_, *gens_, gens_->size());
  return *this;
}

Surd& Surd::operator*=(const Rational& r) {
  for (auto& v : c_) v *= r;
  return *this;
}

double Surd::approx() const {
  long double acc = 0;
  for (std::size_t m = 0; m < c_.size(); ++m) {
    if (c_[m] == 0) continue;
    acc += static_cast<long double>(to_double(c_[m])) *
           std::sqrt(static_cast<long double>(to_double(subset_product(*gens_, m))));
  }
  return static_cast<double>(acc);
}

std::vector<std::pair<Rational, Rational>> Surd::terms() const {
  std::vector<std::pair<Rational, Rational>> out;
  for (std::size_t m = 0; m < c_.size(); ++m)
    if (c_[m] != 0) out.emplace_back(c_[m], subset_product(*gens_, m));
  return out;
}

RadicalField::RadicalField(std::vector<Rational> gens)
    : gens_(std::make_shared<const std::vector<Rational>>(std::move(gens))) {
  for (const auto& g : *gens_)
    if (g < 0) throw std::domain_error("negative radical generator");
}

Surd RadicalField::root(std::size_t i) const {
  Surd s(gens_);
  s.coefficient(std::size_t{1} << i) = 1;
  return s;
}

Surd RadicalField::quad(const QuadValue& v, std::size_t sqrt3_index) const {
  if ((*gens_)[sqrt3_index] != 3) throw std::invalid_argument("generator is not 3");
  Surd s(gens_, v.a());
  s.coefficient(std::size_t{1} << sqrt3_index) = v.b();
  return s;
}

int sign(const Surd& x) { return sign_rec(x.coefficients(), x.generators(), x.degree()); }

int compare(const Surd& x, const Surd& y) { return sign(x - y); }

int sign_minus_sqrt(const Surd& x, const Surd& y) {
  const int sy = sign(y);
  if (sy < 0) throw std::domain_error("square root of a negative value");
  const int sx = sign(x);
  if (sy == 0) return sx;
  if (sx <= 0) return -1;
  return sign(x * x - y);
}

Integer floor(const Surd& x) {
  if (x.is_rational()) return floor(x.coefficient(0));
  // the estimate only seeds the search
  const double est = x.approx();
  Integer g = std::isfinite(est) ? Integer(static_cast<long long>(std::floor(est))) : Integer(0);
  while (sign(x - Rational(g)) < 0) --g;
  while (sign(x - Rational(g + 1)) >= 0) ++g;
  return g;
}

Integer ceil(const Surd& x) { return -floor(-x); }

Integer floor_sqrt(const Surd& y) {
  if (sign(y) < 0) throw std::domain_error("square root of a negative value");
  const double est = std::sqrt(std::max(0.0, y.approx()));
  Integer g = Integer(static_cast<long long>(std::floor(est)));
  if (g < 0) g = 0;
  auto sq = [&](const Integer& m) { return Surd(y.generator_handle(), Rational(m * m)); };
  while (g > 0 && sign(y - sq(g)) < 0) --g;
  while (sign(y - sq(g + 1)) >= 0) ++g;
  return g;
}

std::string to_string(const Surd& x) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [c, r] : x.terms()) {
    if (!first) os << " + ";
    first = false;
    os << to_string(c);
    if (r != 1) os << "*sqrt(" << to_string(r) << ")";
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace sdcert
