#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "sdcert/json_io.hpp"
#include "sdcert/parallel.hpp"

using namespace sdcert;

namespace {

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;

struct Global {
  std::string format = "json";
  std::string out;
  int threads = 0;
  bool full = false;
};

struct Csv {
  std::ostringstream s;
  void row(std::initializer_list<std::string> cells) {
    bool first = true;
    for (const auto& c : cells) {
      if (!first) s << ',';
      s << c;
      first = false;
    }
    s << '\n';
  }
};

std::string str(std::int64_t v) { return std::to_string(v); }
std::string str(const Rational& r) { return to_string(r); }
std::string str(bool b) { return b ? "true" : "false"; }
std::string str(double d) {
  std::ostringstream s;
  s.precision(10);
  s << d;
  return s.str();
}
std::string pt(const LatticePoint& p) { return str(p.x) + " " + str(p.y); }

void emit(const Global& g, const Json& j, const std::string& csv) {
  const std::string text = g.format == "csv" ? csv : j.dump(2) + "\n";
  if (g.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(g.out);
    if (!f) throw std::runtime_error("cannot open " + g.out);
    f << text;
  }
}

Rational parse_arg(const std::string& s, const char* name) {
  try {
    return parse_rational(s);
  } catch (const std::invalid_argument&) {
    throw CLI::ValidationError(name, "not a rational: " + s);
  }
}

std::string checkpoint_path(const std::string& given, const char* verb) {
  return given.empty() ? std::string("sdcert_") + verb + ".ckpt" : given;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact certificates for minimal-area non-obtuse lattice triangles"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", g.out, "Write output to a file");
  app.add_option("--threads", g.threads, "Worker threads (default: SDCERT_THREADS or all cores)");
  app.add_flag("--full", g.full, "Paper-scale defaults with checkpointing");

  int result = kOk;

  auto* pell = app.add_subcommand("pell", "Solutions of 3v^2 - 2 = u^2");
  std::size_t pell_count = 5;
  pell->add_option("--count", pell_count)->check(CLI::Range(1, 10000));
  pell->callback([&] {
    Json rows = Json::array();
    Csv csv;
    csv.row({"v", "u", "frac_bound_ok"});
    for (const auto& s : pell_stream(pell_count)) {
      const bool ok = frac_lower_bound_check(s);
      if (!ok) result = kViolation;
      Json j = to_json(s);
      j["frac_bound_ok"] = ok;
      rows.push_back(j);
      csv.row({to_string(s.v), to_string(s.u), str(ok)});
    }
    emit(g, rows, csv.s.str());
  });

  auto* gap7 = app.add_subcommand("gap7", "Largest gap of {s sqrt(3)} for s = 0..6");
  gap7->callback([&] {
    const QuadValue gap = seven_gap();
    const bool ok = gap == QuadValue(Rational(-5), Rational(3));
    if (!ok) result = kViolation;
    Json pts = Json::array();
    for (const auto& p : seven_points_sorted()) pts.push_back(to_json(p));
    Json j = {{"gap", to_json(gap)}, {"gap_approx", gap.approx()}, {"equals_3sqrt3_minus_5", ok}, {"points", pts}};
    Csv csv;
    csv.row({"gap_a", "gap_b", "approx", "ok"});
    csv.row({str(gap.a()), str(gap.b()), str(gap.approx()), str(ok)});
    emit(g, j, csv.s.str());
  });

  auto* witness = app.add_subcommand("witness", "Build an upper-bound certificate");
  std::string w_q, w_eps, w_mode = "reduction";
  witness->add_option("--q", w_q, "D^2")->required();
  witness->add_option("--eps", w_eps, "Tolerance (reduction and half modes)");
  witness->add_option("--mode", w_mode)->check(CLI::IsMember({"reduction", "half", "explicit", "best"}));
  witness->callback([&] {
    const Rational q = parse_arg(w_q, "--q");
    std::optional<WitnessCertificate> cert;
    int attempts = 0;
    if (w_mode == "explicit") {
      cert = build_witness_explicit(q);
    } else if (w_mode == "best") {
      auto b = best_bound(q);
      attempts = b.attempts;
      cert = std::move(b.cert);
    } else {
      if (w_eps.empty()) throw CLI::RequiredError("--eps");
      const Rational eps = parse_arg(w_eps, "--eps");
      cert = w_mode == "half" ? build_witness_half(q, eps) : build_witness(q, eps);
    }
    if (!cert) {
      result = kViolation;
      emit(g, Json{{"q", rational_json(q)}, {"found", false}}, "found\nfalse\n");
      return;
    }
    Json j = to_json(*cert);
    if (attempts) j["attempts"] = attempts;
    j["small_d_sign"] = compare_small_d_bound(Integer(cert->twice_area), q);
    Csv csv;
    csv.row({"q", "x", "y", "z", "t", "twice_area"});
    csv.row({str(q), str(cert->pair.x()), str(cert->pair.y()), str(cert->z), str(cert->t), str(cert->twice_area)});
    emit(g, j, csv.s.str());
  });

  auto* verify = app.add_subcommand("verify", "Re-check a certificate from JSON");
  std::string v_path;
  verify->add_option("--cert", v_path, "Certificate file, or - for stdin")->required();
  verify->callback([&] {
    Json in;
    try {
      if (v_path == "-") {
        in = Json::parse(std::cin);
      } else {
        std::ifstream f(v_path);
        if (!f) throw CLI::ValidationError("--cert", "cannot open " + v_path);
        in = Json::parse(f);
      }
    } catch (const Json::parse_error& e) {
      throw CLI::ValidationError("--cert", e.what());
    }
    Json j;
    try {
      const auto chk = check_certificate(certificate_from_json(in));
      j = {{"ok", chk.ok}, {"failed", chk.ok ? Json(nullptr) : Json(chk.failed)}};
      if (!chk.ok) result = kViolation;
    } catch (const VerificationError& e) {
      j = {{"ok", false}, {"failed", "structure"}, {"error", e.what()}};
      result = kViolation;
    }
    emit(g, j, "ok,failed\n" + str(j["ok"].get<bool>()) + "," + (j["failed"].is_null() ? "" : j["failed"].get<std::string>()) + "\n");
  });

  auto* sval = app.add_subcommand("sval", "Exact S and all M-triangles");
  std::string s_q;
  bool s_naive = false;
  sval->add_option("--q", s_q, "D^2")->required();
  sval->add_flag("--naive", s_naive, "Also run the brute-force box and compare");
  sval->callback([&] {
    const Rational q = parse_arg(s_q, "--q");
    const SValue sv = exact_S(q);
    Json j = to_json(sv);
    if (s_naive) {
      const SValue nv = exact_S_naive(q);
      const bool same = nv.s == sv.s && nv.m_triangles == sv.m_triangles;
      j["naive_agrees"] = same;
      if (!same) result = kViolation;
    }
    Csv csv;
    csv.row({"q", "s", "p0", "p1", "p2", "s1", "s2", "s3"});
    for (const auto& t : sv.m_triangles) {
      const auto m = squared_sides(t);
      csv.row({str(q), str(sv.s), pt(t.p0), pt(t.p1), pt(t.p2), str(m.s1), str(m.s2), str(m.s3)});
    }
    emit(g, j, csv.s.str());
  });

  auto* sliding = app.add_subcommand("sliding", "Sliding detection and the sliding lower bound");
  std::string sl_q, sl_snapshot, sl_write;
  std::int64_t sl_qmax = 0;
  sliding->add_option("--q", sl_q, "Single D^2");
  sliding->add_option("--q-max", sl_qmax, "Scan every critical value up to this bound");
  sliding->add_option("--snapshot", sl_snapshot, "Compare the sliding set with a snapshot file");
  sliding->add_option("--write-snapshot", sl_write, "Write the sliding set as a snapshot file");
  sliding->callback([&] {
    if (sl_q.empty() == (sl_qmax == 0)) throw CLI::ValidationError("sliding", "give exactly one of --q and --q-max");
    Csv csv;
    csv.row({"q", "s", "slides", "O", "W", "A", "B", "bound_ok"});
    auto add_row = [&](const SlidingReport& r) {
      const auto& w = r.witness;
      csv.row({str(r.q), str(r.s), str(r.slides), w ? pt(w->o) : "", w ? pt(w->w) : "", w ? pt(w->a) : "",
               w ? pt(w->b) : "", r.bound_ok ? str(*r.bound_ok) : ""});
    };
    if (!sl_q.empty()) {
      const auto r = detect_sliding(parse_arg(sl_q, "--q"));
      if (r.slides && !r.bound_ok.value_or(false)) result = kViolation;
      add_row(r);
      emit(g, to_json(r), csv.s.str());
      return;
    }
    const auto scan = sliding_scan(sl_qmax, resolve_threads(g.threads));
    if (!scan.all_bounds_ok()) result = kViolation;
    Json j = to_json(scan);
    if (!sl_snapshot.empty()) {
      std::ifstream f(sl_snapshot);
      if (!f) throw CLI::ValidationError("--snapshot", "cannot open " + sl_snapshot);
      const Json snap = Json::parse(f);
      const bool match = snap.at("q_max").get<std::int64_t>() == sl_qmax &&
                         snap.at("sliding").get<std::vector<std::int64_t>>() == scan.sliding();
      j["snapshot_match"] = match;
      if (!match) result = kViolation;
    }
    if (!sl_write.empty()) {
      std::ofstream f(sl_write);
      f << Json{{"q_max", sl_qmax}, {"sliding", scan.sliding()}}.dump(2) << "\n";
    }
    for (const auto& r : scan.reports) add_row(r);
    emit(g, j, csv.s.str());
  });

  auto* cover = app.add_subcommand("cover", "Coverage of 2 sqrt(x^2 + y^2) by valid pairs");
  std::int64_t c_xmax = 300'000;
  std::string c_eps = "1/17", c_bin, c_window, c_ckpt;
  cover->add_option("--x-max", c_xmax);
  cover->add_option("--eps", c_eps);
  cover->add_option("--bin-width", c_bin);
  cover->add_option("--window-lo", c_window, "Lower end of the checked range (default x_max/3)");
  cover->add_option("--checkpoint", c_ckpt, "Checkpoint path prefix");
  cover->callback([&] {
    CoverOptions opt;
    if (g.full && cover->count("--x-max") == 0) c_xmax = 3'500'000;
    if (!c_bin.empty()) opt.bin_width = parse_arg(c_bin, "--bin-width");
    if (!c_window.empty()) opt.window_lo = parse_arg(c_window, "--window-lo");
    opt.threads = resolve_threads(g.threads);
    if (g.full || !c_ckpt.empty()) opt.checkpoint = checkpoint_path(c_ckpt, "cover");
    CoverReport rep;
    try {
      rep = cover_scan(c_xmax, parse_arg(c_eps, "--eps"), opt);
    } catch (const std::invalid_argument& e) {
      throw CLI::ValidationError("cover", e.what());
    }
    if (!rep.gaps.empty()) result = kViolation;
    std::cerr << "cover: " << rep.pairs << " pairs in " << rep.duration_seconds << " s\n";
    Csv csv;
    csv.row({"lo_sq", "hi_sq", "lo", "hi", "width"});
    for (const auto& gp : rep.gaps)
      csv.row({str(gp.lo_sq), str(gp.hi_sq), str(std::sqrt(double(gp.lo_sq))), str(std::sqrt(double(gp.hi_sq))), str(gp.width)});
    emit(g, to_json(rep), csv.s.str());
  });

  auto* table = app.add_subcommand("table", "Step table of near-equilateral triangles");
  std::int64_t t_rmax = 1'000'000'000, t_qlo = 4'000'000, t_qhi = 0;
  std::string t_tol = "1/10", t_ckpt;
  bool t_rows = false;
  table->add_option("--r-max", t_rmax);
  table->add_option("--tol", t_tol);
  table->add_option("--q-lo", t_qlo, "Check the small-D inequality from here");
  table->add_option("--q-hi", t_qhi, "... up to here (default 9 10^8, or r_max when smaller)");
  table->add_option("--checkpoint", t_ckpt);
  table->add_flag("--rows", t_rows, "Include every table row in the JSON output");
  table->callback([&] {
    if (g.full && table->count("--r-max") == 0) t_rmax = 1'000'000'000'000LL;
    TableOptions opt;
    opt.threads = resolve_threads(g.threads);
    if (g.full || !t_ckpt.empty()) opt.checkpoint = checkpoint_path(t_ckpt, "table");
    StepTable t;
    try {
      t = triangle_table(t_rmax, parse_arg(t_tol, "--tol"), opt);
    } catch (const std::invalid_argument& e) {
      throw CLI::ValidationError("table", e.what());
    }
    const std::int64_t q_hi = t_qhi > 0 ? t_qhi : std::min<std::int64_t>(900'000'000, t_rmax);
    const TableCheck chk = check_table(t, t_qlo, q_hi);
    if (!chk.ok()) result = kViolation;
    std::cerr << "table: " << t.triangle_count << " triangles in " << t.duration_seconds << " s\n";
    Json j = to_json(t, t_rows);
    j["check"] = to_json(chk);
    Csv csv;
    csv.row({"min_side_sq", "twice_area", "p1", "p2"});
    for (const auto& r : t.rows) csv.row({str(r.min_side_sq), str(r.twice_area), pt(r.triangle.p1), pt(r.triangle.p2)});
    emit(g, j, csv.s.str());
  });

  auto* residuals = app.add_subcommand("residuals", "best_bound residuals over log-spaced q");
  std::string r_min = "4000000", r_max = "10000000000";
  int r_points = 50;
  residuals->add_option("--d2-min", r_min);
  residuals->add_option("--d2-max", r_max);
  residuals->add_option("--points", r_points)->check(CLI::Range(1, 100000));
  residuals->callback([&] {
    if (g.full && residuals->count("--d2-max") == 0) r_max = "49000000000000";
    const auto qs = log_spaced_q(parse_arg(r_min, "--d2-min"), parse_arg(r_max, "--d2-max"), r_points);
    std::vector<ResidualRow> rows;
    try {
      rows = residual_scan(qs, resolve_threads(g.threads));
    } catch (const std::invalid_argument& e) {
      throw CLI::ValidationError("residuals", e.what());
    }
    Json arr = Json::array();
    Csv csv;
    csv.row({"q", "eps_used", "twice_area", "residual", "certificate_ok", "small_d_bound_ok"});
    for (const auto& r : rows) {
      if (!r.certificate_ok || r.residual_sign <= 0 || !r.small_d_bound_ok.value_or(true)) result = kViolation;
      arr.push_back(to_json(r));
      csv.row({str(r.q), str(r.eps_used), str(r.twice_area), str(r.residual), str(r.certificate_ok),
               r.small_d_bound_ok ? str(*r.small_d_bound_ok) : ""});
    }
    emit(g, arr, csv.s.str());
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  } catch (const SearchCapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kViolation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kViolation;
  }
  return result;
}
