#include "sdcert/campaigns.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>

#include <json.hpp>

#include "sdcert/diophantine.hpp"
#include "sdcert/parallel.hpp"
#include "sdcert/surd.hpp"
#include "sdcert/witness.hpp"

namespace sdcert {

namespace {

using Clock = std::chrono::steady_clock;
using nlohmann::json;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::int64_t num64(const Rational& r) { return to_int64(boost::multiprecision::numerator(r)); }
std::int64_t den64(const Rational& r) { return to_int64(boost::multiprecision::denominator(r)); }

// sign of (2 - sqrt(2)) eps - len
int sign_critical_minus(const Rational& eps, const Rational& len) {
  const RadicalField f({Rational(2)});
  return sign((f.value(2) - f.root(0)) * eps - f.value(len));
}

void write_atomic(const std::string& path, const std::string& data) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write checkpoint " + tmp);
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
  }
  std::filesystem::rename(tmp, path);
}

std::optional<json> read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  return json::parse(in);
}

// bin k holds 2 sqrt(R) in [k w, (k + 1) w), i.e. 4 R den^2 in [(k num)^2, ((k + 1) num)^2)
struct Binning {
  std::int64_t num;
  std::int64_t den;

  std::uint64_t bin_of(std::int64_t r) const {
    const u128 v = static_cast<u128>(4) * static_cast<u128>(r) * static_cast<u128>(den) * static_cast<u128>(den);
    auto k = static_cast<std::uint64_t>(2.0 * std::sqrt(static_cast<double>(r)) * static_cast<double>(den) /
                                        static_cast<double>(num));
    auto lo = [&](std::uint64_t kk) { return static_cast<u128>(kk) * num * static_cast<u128>(kk) * num; };
    while (k > 0 && lo(k) > v) --k;
    while (lo(k + 1) <= v) ++k;
    return k;
  }

  // R range of bin k
  std::pair<std::int64_t, std::int64_t> r_range(std::uint64_t k) const {
    const u128 d4 = static_cast<u128>(4) * den * den;
    const u128 a = static_cast<u128>(k) * num * static_cast<u128>(k) * num;
    const u128 b = static_cast<u128>(k + 1) * num * static_cast<u128>(k + 1) * num;
    const u128 r_lo = (a + d4 - 1) / d4;
    const u128 r_hi = (b - 1) / d4;
    return {static_cast<std::int64_t>(r_lo), static_cast<std::int64_t>(r_hi)};
  }

  Rational start(std::uint64_t k) const { return Rational(Integer(k) * num, den); }
};

class Bitmap {
 public:
  explicit Bitmap(std::uint64_t bits) : words_((bits + 63) / 64) {}
  void set(std::uint64_t i) { words_[i / 64].fetch_or(std::uint64_t{1} << (i % 64), std::memory_order_relaxed); }
  bool test(std::uint64_t i) const { return (words_[i / 64].load(std::memory_order_relaxed) >> (i % 64)) & 1; }
  std::uint64_t size() const { return words_.size() * 64; }

  std::string dump() const {
    std::string s(words_.size() * 8, '\0');
    for (std::size_t i = 0; i < words_.size(); ++i) {
      const std::uint64_t v = words_[i].load();
      for (int b = 0; b < 8; ++b) s[i * 8 + b] = static_cast<char>((v >> (8 * b)) & 0xff);
    }
    return s;
  }
  void load(const std::string& s) {
    if (s.size() != words_.size() * 8) throw std::runtime_error("checkpoint bitmap has the wrong size");
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t v = 0;
      for (int b = 0; b < 8; ++b) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(s[i * 8 + b])) << (8 * b);
      words_[i].store(v);
    }
  }

 private:
  std::vector<std::atomic<std::uint64_t>> words_;
};

struct CoverData {
  const std::vector<std::int64_t>& list;
  const std::vector<char>& valid;
  std::int64_t x_max;
  Binning bins;

  // least and greatest 4R of a valid pair x <= y <= x_max inside bin k
  std::optional<std::pair<std::int64_t, std::int64_t>> extremes(std::uint64_t k) const {
    const auto [r_lo, r_hi] = bins.r_range(k);
    std::optional<std::pair<std::int64_t, std::int64_t>> out;
    for (std::int64_t x : list) {
      if (2 * x * x > r_hi) break;
      const std::int64_t rest_lo = r_lo - x * x, rest_hi = r_hi - x * x;
      std::int64_t y_lo = rest_lo <= 0 ? 0 : static_cast<std::int64_t>(isqrt(static_cast<std::uint64_t>(rest_lo - 1))) + 1;
      std::int64_t y_hi = static_cast<std::int64_t>(isqrt(static_cast<std::uint64_t>(rest_hi)));
      y_lo = std::max(y_lo, x);
      y_hi = std::min(y_hi, x_max);
      for (std::int64_t y = y_lo; y <= y_hi; ++y) {
        if (!valid[static_cast<std::size_t>(y)]) continue;
        const std::int64_t v = 4 * (x * x + y * y);
        if (!out) out = std::make_pair(v, v);
        out->first = std::min(out->first, v);
        out->second = std::max(out->second, v);
      }
    }
    return out;
  }
};

// sqrt(hi_sq) - sqrt(lo_sq) > (2 - sqrt(2)) eps
bool exceeds_critical(std::int64_t lo_sq, std::int64_t hi_sq, const Rational& eps) {
  const RadicalField f({Rational(2), Rational(lo_sq), Rational(hi_sq)});
  const Surd len = f.root(2) - f.root(1);
  return sign(len - (f.value(2) - f.root(0)) * eps) > 0;
}

class TwoSquares {
 public:
  explicit TwoSquares(std::int64_t n_max) {
    const auto lim = static_cast<std::int64_t>(isqrt(static_cast<std::uint64_t>(std::max<std::int64_t>(n_max, 4)))) + 1;
    std::vector<char> comp(static_cast<std::size_t>(lim) + 1, 0);
    for (std::int64_t p = 2; p <= lim; ++p) {
      if (comp[static_cast<std::size_t>(p)]) continue;
      primes_.push_back(p);
      for (std::int64_t m = p * p; m <= lim; m += p) comp[static_cast<std::size_t>(m)] = 1;
    }
  }

  bool operator()(std::int64_t n) const {
    if (n <= 0) return n == 0;
    for (std::int64_t p : primes_) {
      if (p * p > n) break;
      if (n % p != 0) continue;
      int e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      if (p % 4 == 3 && (e & 1)) return false;
    }
    return n % 4 != 3;
  }

 private:
  std::vector<std::int64_t> primes_;
};

class Front {
 public:
  void insert(std::int64_t m, std::int64_t a, const LatticeTriangle& tri) {
    auto it = rows_.lower_bound(m);
    if (it != rows_.end()) {
      const std::int64_t a2 = it->second.first;
      if (a2 < a || (a2 == a && it->first > m)) return;
      if (a2 == a) {
        if (tri < it->second.second) it->second.second = tri;
        return;
      }
    }
    it = rows_.insert_or_assign(m, std::make_pair(a, tri)).first;
    while (it != rows_.begin()) {
      auto prev = std::prev(it);
      if (prev->second.first < a) break;
      rows_.erase(prev);
    }
  }

  void merge(const Front& other) {
    for (const auto& [m, v] : other.rows_) insert(m, v.first, v.second);
  }

  std::vector<StepRow> rows() const {
    std::vector<StepRow> out;
    for (auto it = rows_.rbegin(); it != rows_.rend(); ++it) out.push_back({it->first, it->second.first, it->second.second});
    return out;
  }

 private:
  std::map<std::int64_t, std::pair<std::int64_t, LatticeTriangle>> rows_;
};

json point_json(const LatticePoint& p) { return json::array({p.x, p.y}); }
LatticePoint point_from(const json& j) { return {j.at(0).get<std::int64_t>(), j.at(1).get<std::int64_t>()}; }

}  // namespace

std::vector<std::int64_t> valid_list(std::int64_t x_max, const Rational& eps) {
  std::vector<std::int64_t> out;
  for (std::int64_t x = 1; x <= x_max; ++x)
    if (near_multiple(x, eps)) out.push_back(x);
  return out;
}

Rational default_bin_width(const Rational& eps) {
  std::int64_t lo = 0, hi = 10'000;
  while (lo < hi) {
    const std::int64_t mid = (lo + hi + 1) / 2;
    if (sign_critical_minus(eps, Rational(2 * mid, 10'000)) >= 0)
      lo = mid;
    else
      hi = mid - 1;
  }
  if (lo == 0) throw std::invalid_argument("eps too small for the default bin width");
  return Rational(lo, 10'000);
}

CoverReport cover_scan(std::int64_t x_max, const Rational& eps, const CoverOptions& opt) {
  const auto t0 = Clock::now();
  if (x_max < 100) throw std::invalid_argument("x_max must be at least 100");
  if (x_max > 50'000'000) throw std::invalid_argument("x_max is too large");
  if (eps <= 0 || eps >= Rational(1, 2)) throw std::invalid_argument("eps must lie in (0, 1/2)");
  const Rational w = opt.bin_width ? *opt.bin_width : default_bin_width(eps);
  if (w <= 0) throw std::invalid_argument("bin width must be positive");
  if (sign_critical_minus(eps, 2 * w) < 0) throw std::invalid_argument("bin width exceeds (2 - sqrt(2)) eps / 2");
  if (!fits_int64(w) || boost::multiprecision::denominator(w) > 1'000'000'000)
    throw std::invalid_argument("bin width denominator is too large");
  const Binning bins{num64(w), den64(w)};

  CoverReport rep;
  rep.x_max = x_max;
  rep.eps = eps;
  rep.bin_width = w;
  rep.window_lo = opt.window_lo ? *opt.window_lo : Rational(x_max, 3);

  const std::vector<std::int64_t> list = valid_list(x_max, eps);
  std::vector<char> valid(static_cast<std::size_t>(x_max) + 1, 0);
  for (auto x : list) valid[static_cast<std::size_t>(x)] = 1;
  rep.list_size = static_cast<std::int64_t>(list.size());

  const std::uint64_t n_bins = bins.bin_of(2 * x_max * x_max) + 2;
  Bitmap occ(n_bins);
  std::atomic<std::uint64_t> pairs{0};
  std::size_t next = 0;

  const std::string ck_json = opt.checkpoint.empty() ? "" : opt.checkpoint + ".json";
  const std::string ck_bits = opt.checkpoint.empty() ? "" : opt.checkpoint + ".bits";
  json meta = {{"kind", "cover"},
               {"x_max", x_max},
               {"eps", to_string(eps)},
               {"bin_width", to_string(w)},
               {"bins", n_bins}};
  if (!ck_json.empty()) {
    if (auto prev = read_json(ck_json)) {
      json key = *prev;
      key.erase("next");
      key.erase("pairs");
      if (key != meta) throw std::runtime_error("checkpoint " + ck_json + " belongs to a different run");
      std::ifstream in(ck_bits, std::ios::binary);
      const std::string bits((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
      occ.load(bits);
      next = prev->at("next").get<std::size_t>();
      pairs = prev->at("pairs").get<std::uint64_t>();
    }
  }

  const unsigned threads = std::max(1u, opt.threads);
  const std::size_t chunk = ck_json.empty() ? list.size() : std::max<std::size_t>(1, opt.checkpoint_every);
  while (next < list.size()) {
    const std::size_t end = std::min(list.size(), next + chunk);
    parallel_for(end - next, threads, [&](std::size_t off) {
      const std::size_t i = next + off;
      const std::int64_t x = list[i];
      std::uint64_t local = 0;
      for (std::size_t j = i; j < list.size(); ++j) {
        const std::int64_t y = list[j];
        occ.set(bins.bin_of(x * x + y * y));
        ++local;
      }
      pairs += local;
    });
    next = end;
    if (!ck_json.empty()) {
      write_atomic(ck_bits, occ.dump());
      json state = meta;
      state["next"] = next;
      state["pairs"] = pairs.load();
      write_atomic(ck_json, state.dump());
    }
  }
  rep.pairs = pairs.load();

  const CoverData data{list, valid, x_max, bins};
  const std::int64_t top_sq = 4 * x_max * x_max;
  const auto k_lo = static_cast<std::uint64_t>(floor(rep.window_lo * bins.den / bins.num));
  std::optional<std::uint64_t> first, prev;
  std::optional<std::uint64_t> covered_from, covered_to;
  std::uint64_t span_min = 1;
  while (sign_critical_minus(eps, Rational(Integer(span_min) * bins.num, bins.den)) >= 0) ++span_min;
  for (std::uint64_t k = k_lo; k < n_bins; ++k) {
    if (!occ.test(k)) continue;
    if (!first) first = k;
    if (prev && k - *prev + 1 >= span_min) {
      const auto lo = data.extremes(*prev);
      const auto hi = data.extremes(k);
      if (!lo || !hi) throw std::logic_error("occupied bin without a pair");
      if (exceeds_critical(lo->second, hi->first, eps)) {
        if (hi->first > top_sq) {
          covered_to = *prev;
          break;
        }
        const double width = std::sqrt(static_cast<double>(hi->first)) - std::sqrt(static_cast<double>(lo->second));
        rep.gaps.push_back({lo->second, hi->first, width});
        covered_from = k;
      }
    }
    prev = k;
  }
  if (!first) throw std::runtime_error("no values above the window start");
  rep.covered_lo = bins.start(covered_from ? *covered_from : *first);
  rep.covered_hi = bins.start(covered_to ? *covered_to : *prev);
  rep.duration_seconds = seconds_since(t0);
  return rep;
}

std::vector<std::int64_t> table_list(std::int64_t r_max, const Rational& tol) {
  if (tol <= 0 || tol >= Rational(1, 2)) throw std::invalid_argument("tol must lie in (0, 1/2)");
  const std::int64_t p = num64(tol), q = den64(tol);
  std::vector<std::int64_t> out;
  const auto x_max = static_cast<std::int64_t>(isqrt(static_cast<std::uint64_t>(r_max)));
  for (std::int64_t x = 0; x <= x_max; ++x)
    if (near_int_mul_sqrt3(2 * x, 0, p, q, true)) out.push_back(x);
  return out;
}

StepTable triangle_table(std::int64_t r_max, const Rational& tol, const TableOptions& opt) {
  const auto t0 = Clock::now();
  if (r_max < 10'000) throw std::invalid_argument("r_max must be at least 10^4");
  if (r_max > 4'000'000'000'000'000LL) throw std::invalid_argument("r_max is too large");
  const std::vector<std::int64_t> list = table_list(r_max, tol);

  StepTable table;
  table.r_max = r_max;
  table.tol = tol;
  table.list_size = static_cast<std::int64_t>(list.size());

  Front front;
  std::uint64_t count = 0;
  std::size_t next = 0;
  while (next < list.size() && list[next] == 0) ++next;

  const std::string ck_json = opt.checkpoint.empty() ? "" : opt.checkpoint + ".json";
  const json meta = {{"kind", "table"}, {"r_max", r_max}, {"tol", to_string(tol)}};
  if (!ck_json.empty()) {
    if (auto prev = read_json(ck_json)) {
      json key = {{"kind", prev->at("kind")}, {"r_max", prev->at("r_max")}, {"tol", prev->at("tol")}};
      if (key != meta) throw std::runtime_error("checkpoint " + ck_json + " belongs to a different run");
      next = prev->at("next").get<std::size_t>();
      count = prev->at("count").get<std::uint64_t>();
      for (const auto& row : prev->at("front")) {
        const auto& t = row.at(2);
        front.insert(row.at(0).get<std::int64_t>(), row.at(1).get<std::int64_t>(),
                     {point_from(t.at(0)), point_from(t.at(1)), point_from(t.at(2))});
      }
    }
  }

  const unsigned threads = std::max(1u, opt.threads);
  const std::size_t chunk = ck_json.empty() ? list.size() : std::max<std::size_t>(1, opt.checkpoint_every);
  while (next < list.size()) {
    const std::size_t end = std::min(list.size(), next + chunk);
    std::vector<Front> fronts(end - next);
    std::vector<std::uint64_t> counts(end - next, 0);
    parallel_for(end - next, threads, [&](std::size_t off) {
      const std::int64_t x = list[next + off];
      Front& local = fronts[off];
      auto consider = [&](std::int64_t y, std::int64_t z, std::int64_t t) {
        const LatticeTriangle tri{{0, 0}, {x, y}, {z, t}};
        if (twice_area(tri) == 0) return;
        const TriangleMetrics m = squared_sides(tri);
        if (!is_nonobtuse(m)) return;
        ++counts[off];
        local.insert(m.s1, m.t, tri);
      };
      for (std::int64_t y : list) {
        if (x * x + y * y >= r_max) break;
        const std::int64_t t = nearest_half_sqrt3(y, x);
        if (y == 0 && (x & 1)) {
          consider(y, (x - 1) / 2, t);
          consider(y, (x + 1) / 2, t);
        } else {
          consider(y, nearest_half_sqrt3(x, -y), t);
        }
      }
    });
    for (std::size_t k = 0; k < fronts.size(); ++k) {
      front.merge(fronts[k]);
      count += counts[k];
    }
    next = end;
    if (!ck_json.empty()) {
      json state = meta;
      state["next"] = next;
      state["count"] = count;
      json rows = json::array();
      for (const auto& r : front.rows())
        rows.push_back({r.min_side_sq, r.twice_area,
                        json::array({point_json(r.triangle.p0), point_json(r.triangle.p1), point_json(r.triangle.p2)})});
      state["front"] = rows;
      write_atomic(ck_json, state.dump());
    }
  }
  table.rows = front.rows();
  table.triangle_count = count;
  table.duration_seconds = seconds_since(t0);
  return table;
}

std::optional<std::int64_t> table_bound(const StepTable& table, std::int64_t q) {
  std::optional<std::int64_t> best;
  for (const auto& r : table.rows) {
    if (r.min_side_sq < q) break;
    best = r.twice_area;
  }
  return best;
}

TableCheck check_table(const StepTable& table, std::int64_t q_lo, std::int64_t q_hi) {
  if (q_lo < 1 || q_lo > q_hi) throw std::invalid_argument("need 1 <= q_lo <= q_hi");
  TableCheck out;
  out.q_lo = q_lo;
  out.q_hi = q_hi;
  const auto& rows = table.rows;
  if (rows.empty() || rows.front().min_side_sq < q_hi) out.uncovered = true;
  const TwoSquares two_squares(q_hi);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::int64_t seg_hi = std::min(rows[i].min_side_sq, q_hi);
    const std::int64_t seg_lo = std::max(i + 1 < rows.size() ? rows[i + 1].min_side_sq + 1 : 1, q_lo);
    if (seg_lo > seg_hi) continue;
    ++out.segments_checked;
    std::int64_t q = seg_lo;
    while (q <= seg_hi && !two_squares(q)) ++q;
    if (q > seg_hi) continue;
    if (compare_small_d_bound(Integer(rows[i].twice_area), Rational(q)) >= 0)
      out.failures.push_back({q, rows[i].min_side_sq, rows[i].twice_area});
  }
  return out;
}

std::vector<Rational> log_spaced_q(const Rational& d2_min, const Rational& d2_max, int points) {
  if (points < 1) throw std::invalid_argument("points must be positive");
  if (d2_min <= 0 || d2_max < d2_min) throw std::invalid_argument("need 0 < d2_min <= d2_max");
  std::vector<Rational> out;
  const long double a = std::log(static_cast<long double>(to_double(d2_min)));
  const long double b = std::log(static_cast<long double>(to_double(d2_max)));
  for (int i = 0; i < points; ++i) {
    const long double t = points == 1 ? 0.0L : static_cast<long double>(i) / (points - 1);
    out.emplace_back(std::llround(std::exp(a + t * (b - a))));
  }
  return out;
}

std::vector<ResidualRow> residual_scan(const std::vector<Rational>& q_list, unsigned threads) {
  for (const auto& q : q_list)
    if (q < 100) throw std::invalid_argument("every q must be at least 100");
  std::vector<ResidualRow> rows(q_list.size());
  parallel_for(q_list.size(), std::max(1u, threads), [&](std::size_t i) {
    const Rational& q = q_list[i];
    const BestBound bb = best_bound(q);
    ResidualRow& r = rows[i];
    r.q = q;
    r.eps_used = bb.cert.eps.a();
    r.attempts = bb.attempts;
    r.twice_area = bb.cert.twice_area;
    r.residual_sign = compare_main_term(Integer(r.twice_area), q);
    r.residual = static_cast<double>(r.twice_area) - std::sqrt(3.0) / 2.0 * to_double(q);
    r.certificate_ok = verify_certificate(bb.cert);
    if (q >= kSmallDStart) r.small_d_bound_ok = compare_small_d_bound(Integer(r.twice_area), q) < 0;
  });
  return rows;
}

std::vector<std::int64_t> SlidingScan::sliding() const {
  std::vector<std::int64_t> out;
  for (const auto& r : reports)
    if (r.slides) out.push_back(num64(r.q));
  return out;
}

bool SlidingScan::all_bounds_ok() const {
  for (const auto& r : reports)
    if (r.slides && !r.bound_ok.value_or(false)) return false;
  return true;
}

SlidingScan sliding_scan(std::int64_t q_max, unsigned threads) {
  const std::vector<std::int64_t> qs = critical_values(q_max);
  SlidingScan out;
  out.q_max = q_max;
  out.reports.resize(qs.size());
  parallel_for(qs.size(), std::max(1u, threads),
               [&](std::size_t i) { out.reports[i] = detect_sliding(Rational(qs[i])); });
  return out;
}

}  // namespace sdcert
