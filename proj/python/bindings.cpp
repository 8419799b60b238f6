#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sdcert/json_io.hpp"
#include "sdcert/parallel.hpp"

namespace py = pybind11;
using namespace sdcert;

namespace {

Rational rat(const py::object& v) {
  if (py::isinstance<py::int_>(v)) return parse_rational(py::str(v).cast<std::string>());
  return parse_rational(v.cast<std::string>());
}

LatticePoint pt(const std::pair<std::int64_t, std::int64_t>& p) { return {p.first, p.second}; }

std::string witness(const py::object& q, const py::object& eps, const std::string& mode) {
  std::optional<WitnessCertificate> cert;
  if (mode == "explicit") {
    cert = build_witness_explicit(rat(q));
  } else if (mode == "best") {
    cert = best_bound(rat(q)).cert;
  } else if (mode == "half") {
    cert = build_witness_half(rat(q), rat(eps));
  } else if (mode == "reduction") {
    cert = build_witness(rat(q), rat(eps));
  } else {
    throw py::value_error("unknown mode " + mode);
  }
  return cert ? to_json(*cert).dump() : "null";
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  py::register_exception<VerificationError>(m, "VerificationError", PyExc_ValueError);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);

  m.def("critical_values", &critical_values, py::arg("q_max"));
  m.def("exact_s", [](const py::object& q) { return to_json(exact_S(rat(q))).dump(); }, py::arg("q"));
  m.def("exact_s_naive", [](const py::object& q) { return to_json(exact_S_naive(rat(q))).dump(); }, py::arg("q"));
  m.def("detect_sliding", [](const py::object& q) { return to_json(detect_sliding(rat(q))).dump(); }, py::arg("q"));
  m.def("witness", &witness, py::arg("q"), py::arg("eps") = "1/17", py::arg("mode") = "reduction");
  m.def("verify", [](const std::string& text) { return verify_certificate(certificate_from_json(Json::parse(text))); },
        py::arg("certificate"));
  m.def("seven_gap", [] {
    const QuadValue g = seven_gap();
    return std::make_pair(to_string(g.a()), to_string(g.b()));
  });
  m.def("pell", [](std::size_t count) {
    Json j = Json::array();
    for (const auto& s : pell_stream(count)) j.push_back(to_json(s));
    return j.dump();
  }, py::arg("count"));
  m.def("trapezoid", [](std::pair<std::int64_t, std::int64_t> o, std::pair<std::int64_t, std::int64_t> a,
                        std::pair<std::int64_t, std::int64_t> b, std::pair<std::int64_t, std::int64_t> w) {
    const auto s = trapezoid_sum_check(pt(o), pt(a), pt(b), pt(w));
    return py::make_tuple(s.lhs, to_json(s.rhs).dump(), QuadValue(Rational(s.lhs)) == s.rhs);
  });
  m.def("cover_scan", [](std::int64_t x_max, const py::object& eps, int threads) {
    CoverOptions opt;
    opt.threads = resolve_threads(threads);
    const Rational e = rat(eps);
    py::gil_scoped_release release;
    return to_json(cover_scan(x_max, e, opt)).dump();
  }, py::arg("x_max"), py::arg("eps") = "1/17", py::arg("threads") = 0);
  m.def("residual_scan", [](const std::vector<std::string>& qs, int threads) {
    std::vector<Rational> list;
    for (const auto& s : qs) list.push_back(parse_rational(s));
    Json j = Json::array();
    for (const auto& r : residual_scan(list, resolve_threads(threads))) j.push_back(to_json(r));
    return j.dump();
  }, py::arg("qs"), py::arg("threads") = 0);
  m.def("resolve_threads", &resolve_threads, py::arg("requested") = 0);
}
