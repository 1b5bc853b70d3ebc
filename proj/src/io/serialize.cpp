#include "io/serialize.hpp"

namespace orbital::io {

json fe_to_json(const Fe& x) { return x.str(); }

Fe fe_from_json(const Ctx& c, const json& j) {
  if (j.is_number_integer()) return Fe::integer(c, j.get<long long>());
  if (j.is_string()) return padic::parse_fe(c, j.get<std::string>());
  throw ConfigError("field element literal must be an integer or a string");
}

json cyc_to_json(const Cyc& z) {
  return json{{"level", z.level()}, {"coeffs", z.coeffs()}, {"repr", z.str()}};
}

Cyc cyc_from_json(long long p, const json& j) {
  int level = j.at("level").get<int>();
  auto coeffs = j.at("coeffs").get<std::vector<long long>>();
  Cyc z = Cyc::zero(p);
  long long n = 1;
  for (int i = 0; i < level; ++i) n *= p;
  if ((long long)coeffs.size() != n) throw ConfigError("cyclotomic coefficient count mismatch");
  for (long long e = 0; e < n; ++e)
    if (coeffs[(size_t)e]) z += Cyc::root(p, level, e).scaled(coeffs[(size_t)e]);
  return z;
}

json mat_to_json(const Mat& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(fe_to_json(m.at(i, j)));
    rows.push_back(row);
  }
  return rows;
}

Mat mat_from_json(const Ctx& c, const json& j) {
  if (!j.is_array() || j.empty()) throw ConfigError("matrix literal must be a nonempty array");
  int rows = (int)j.size();
  int cols = (int)j.at(0).size();
  Mat m(rows, cols, c);
  for (int i = 0; i < rows; ++i) {
    if ((int)j.at((size_t)i).size() != cols) throw ConfigError("ragged matrix literal");
    for (int k = 0; k < cols; ++k) m.at(i, k) = fe_from_json(c, j.at((size_t)i).at((size_t)k));
  }
  return m;
}

json lattice_to_json(const herm::Lattice& L) {
  json rows = json::array();
  for (int i = 0; i < L.dim(); ++i) {
    json row = json::array();
    for (int j = 0; j < L.dim(); ++j) {
      const Fe& e = L.basis().at(i, j);
      if (e.is_exact_zero() || e.kind() == Fe::Kind::ZeroMod)
        row.push_back(json::array({0, "0"}));
      else {
        std::string unit = std::to_string(e.unit_a());
        if (e.unit_b()) unit += "+" + std::to_string(e.unit_b()) + "*w";
        row.push_back(json::array({e.valuation(), unit}));
      }
    }
    rows.push_back(row);
  }
  return json{{"basis", rows}, {"pivots", [&] {
                std::vector<long long> p;
                for (int i = 0; i < L.dim(); ++i) p.push_back(L.pivot_val(i));
                return p;
              }()}};
}

json normal_form_to_json(const orbit::NormalForm& nf) {
  json t = json::array();
  for (const Fe& x : nf.t) t.push_back(fe_to_json(x));
  return json{{"m", nf.m}, {"r", nf.r}, {"t", t}, {"core", mat_to_json(nf.core)}};
}

orbit::NormalForm normal_form_from_json(const Ctx& c, int m, int r, const json& j) {
  orbit::NormalForm nf;
  nf.m = j.value("m", m);
  nf.r = j.value("r", r);
  if (j.contains("t"))
    for (const auto& e : j.at("t")) nf.t.push_back(fe_from_json(c, e));
  if ((int)nf.t.size() != nf.r) throw ConfigError("normal form needs r corner invariants");
  nf.core = mat_from_json(c, j.at("core"));
  if (nf.core.rows() != nf.m + 1 || nf.core.cols() != nf.m + 1)
    throw ConfigError("core block must be (m+1) x (m+1)");
  return nf;
}

json orbpoly_to_json(const integrals::OrbPoly& poly) {
  json terms = json::array();
  for (auto& [v, cc] : poly.terms)
    terms.push_back(json{{"power", v}, {"coeff", cyc_to_json(cc)}});
  return json{{"terms", terms}, {"repr", poly.str()}};
}

json support_to_json(const integrals::SupportReport& s) {
  return json{{"window_exponent", s.window_exponent},
              {"contributing", s.contributing},
              {"candidates", s.candidates},
              {"saturated", s.saturated},
              {"wall_ms", s.wall_ms}};
}

json fl_report_to_json(const integrals::FLReport& r) {
  return json{
      {"space", r.space == orbit::Space::V0 ? "V0" : "V1"},
      {"provenance", r.provenance == integrals::Provenance::Theorem ? "THEOREM" : "CONJECTURAL"},
      {"equal", r.equal},
      {"lhs", cyc_to_json(r.lhs)},
      {"rhs", cyc_to_json(r.rhs)},
      {"dorb_log_q_coefficient", cyc_to_json(r.dorb_coeff)},
      {"poly", orbpoly_to_json(r.poly)},
      {"support", {{"symmetric", support_to_json(r.sym_support)},
                   {"unitary", support_to_json(r.uni_support)}}},
      {"omega", r.omega},
      {"omega_calibrated", r.omega_calibrated},
      {"transfer_factor_mode", r.transfer_mode}};
}

json graph_to_json(const bt::BTGraph& g) {
  json nodes = json::array();
  for (size_t i = 0; i < g.nodes.size(); ++i)
    nodes.push_back(json{{"id", i}, {"type", g.type[i]}, {"lattice", lattice_to_json(g.nodes[i])}});
  json edges = json::array();
  for (auto& [i, j] : g.edges) edges.push_back(json::array({i, j}));
  return json{{"window", {g.window_a, g.window_b}}, {"nodes", nodes}, {"edges", edges}};
}

rz::RZDatum rzdatum_from_json(const json& j) {
  rz::RZDatum d;
  std::string kind = j.value("case", "EL");
  if (kind == "EL")
    d.kind = rz::RZDatum::Case::EL;
  else if (kind == "PEL")
    d.kind = rz::RZDatum::Case::PEL;
  else
    throw InvalidDatum("case must be EL or PEL");
  d.filtered = j.value("filtered", false);
  for (const auto& s : j.at("signatures")) {
    rz::RZDatum::Signature sig;
    sig.r = s.at("r").get<long long>();
    sig.s = s.at("s").get<long long>();
    if (s.contains("layers"))
      for (const auto& l : s.at("layers"))
        sig.layers.push_back({l.at(0).get<long long>(), l.at(1).get<long long>()});
    d.sig.push_back(sig);
  }
  if (j.contains("conj_of")) d.conj_of = j.at("conj_of").get<std::vector<int>>();
  d.validate();
  return d;
}

}  // namespace orbital::io
