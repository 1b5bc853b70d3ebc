#include "orbital/orbital_c.h"

#include <cstring>
#include <string>

#include "core/util.hpp"
#include "io/serialize.hpp"

using nlohmann::json;
using namespace orbital;
using orbital::integrals::FLReport;
using orbital::integrals::OrbOptions;
using orbital::integrals::Provenance;
using orbital::integrals::SymOptions;
using orbital::integrals::TransferPolicy;
using orbital::integrals::VerifyOptions;
using orbital::orbit::NormalForm;
using orbital::orbit::Space;
using orbital::padic::Ctx;
using orbital::padic::Fe;
using orbital::padic::FieldConfig;
using orbital::padic::PsiChar;

struct orbital_ctx {
  Ctx field;
  long long psi_twist = 1;
  std::string last_error;
};

namespace {

std::string& global_error() {
  static std::string err;
  return err;
}

char* dup_string(const std::string& s) {
  char* out = (char*)malloc(s.size() + 1);
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

int classify_error(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e)) return ORBITAL_E_CONFIG;
  if (dynamic_cast<const NotRegular*>(&e)) return ORBITAL_E_NOT_REGULAR;
  if (dynamic_cast<const NotPreRegular*>(&e)) return ORBITAL_E_NOT_REGULAR;
  if (dynamic_cast<const PrecisionExhausted*>(&e)) return ORBITAL_E_PRECISION;
  if (dynamic_cast<const SaturationFailed*>(&e)) return ORBITAL_E_SATURATION;
  if (dynamic_cast<const WindowTooLarge*>(&e)) return ORBITAL_E_WINDOW;
  if (dynamic_cast<const Unsupported*>(&e)) return ORBITAL_E_UNSUPPORTED;
  if (dynamic_cast<const InvalidDatum*>(&e)) return ORBITAL_E_CONFIG;
  if (dynamic_cast<const json::exception*>(&e)) return ORBITAL_E_CONFIG;
  return ORBITAL_E_INTERNAL;
}

NormalForm parse_element(const Ctx& c, const json& payload) {
  int m = payload.at("m").get<int>();
  int r = payload.at("r").get<int>();
  return io::normal_form_from_json(c, m, r, payload.at("element"));
}

VerifyOptions parse_verify_options(const json& payload) {
  VerifyOptions opt;
  if (payload.contains("transfer_factor"))
    opt.policy = TransferPolicy::by_name(payload.at("transfer_factor").get<std::string>());
  if (payload.contains("window_cap")) {
    opt.uni.cap_exponent = payload.at("window_cap").get<long long>();
  }
  if (payload.contains("workers")) opt.uni.workers = payload.at("workers").get<int>();
  return opt;
}

json run_orb(orbital_ctx* ctx, const json& payload) {
  const Ctx& c = ctx->field;
  PsiChar psi(c, ctx->psi_twist);
  std::string side = payload.value("side", "symmetric");
  NormalForm nf = parse_element(c, payload);
  VerifyOptions vopt = parse_verify_options(payload);
  json out;
  out["side"] = side;
  if (side == "symmetric") {
    auto s = integrals::orb_symmetric(c, psi, nf, vopt.sym);
    auto sv = integrals::orb_special_values(c, s, nf, vopt.policy);
    out["poly"] = io::orbpoly_to_json(s.poly);
    out["value"] = io::cyc_to_json(sv.orb);
    out["dorb_log_q_coefficient"] = io::cyc_to_json(sv.dorb_coeff);
    out["omega"] = sv.omega;
    out["omega_calibrated"] = sv.omega_calibrated;
    out["transfer_factor_mode"] = vopt.policy.name();
    out["support"] = io::support_to_json(s.support);
  } else if (side == "unitary") {
    if (orbit::which_space(nf) == Space::V1) {
      // matched test function vanishes on the non-split group
      out["value"] = io::cyc_to_json(padic::Cyc::zero(c->p));
      out["support"] = io::support_to_json({});
      out["note"] = "non-split side: test function is zero";
    } else {
      herm::BesselFrame F = herm::BesselFrame::make(c, nf.m, nf.r);
      auto u = integrals::orb_unitary(F, psi, nf, vopt.uni);
      out["value"] = io::cyc_to_json(u.value);
      out["support"] = io::support_to_json(u.support);
    }
  } else {
    throw ConfigError("side must be symmetric or unitary");
  }
  return out;
}

json fl_to_json_with_status(const FLReport& rep, bool* theorem_mismatch) {
  json j = io::fl_report_to_json(rep);
  if (!rep.equal && rep.provenance == Provenance::Theorem && theorem_mismatch)
    *theorem_mismatch = true;
  if (!rep.equal && rep.provenance == Provenance::Conjectural)
    j["flag"] = "CONJECTURAL-MISMATCH";
  return j;
}

json run_verify_fl(orbital_ctx* ctx, const json& payload, bool* theorem_mismatch) {
  const Ctx& c = ctx->field;
  PsiChar psi(c, ctx->psi_twist);
  VerifyOptions opt = parse_verify_options(payload);
  json out;
  if (payload.contains("element")) {
    NormalForm nf = parse_element(c, payload);
    FLReport rep = integrals::verify_fl(c, psi, nf, opt);
    out["reports"] = json::array({fl_to_json_with_status(rep, theorem_mismatch)});
    return out;
  }
  // scan mode: deterministically generated regular elements
  int m = payload.at("m").get<int>();
  int r = payload.at("r").get<int>();
  int count = payload.value("count", 10);
  int max_val = payload.value("max_val", 1);
  uint64_t seed = payload.value("seed", (uint64_t)1);
  bool unit_corners = payload.value("unit_corners", false);
  json reports = json::array();
  int made = 0;
  for (uint64_t s = seed; made < count && s < seed + 40 * (uint64_t)count + 400; ++s) {
    try {
      NormalForm nf = orbit::random_symmetric(c, m, r, max_val, s);
      if (unit_corners)
        for (auto& t : nf.t) t = Fe::from_parts(c, 0, 1 + (long long)(s % (uint64_t)(c->p - 1)),
                                                (long long)(s % (uint64_t)c->p));
      FLReport rep = integrals::verify_fl(c, psi, nf, opt);
      json jr = fl_to_json_with_status(rep, theorem_mismatch);
      jr["seed"] = s;
      jr["element"] = io::normal_form_to_json(nf);
      reports.push_back(jr);
      ++made;
    } catch (const PrecisionExhausted&) {
      continue;  // rejection sampling: ill-conditioned instance
    }
  }
  out["reports"] = reports;
  out["generated"] = made;
  return out;
}

json run_bt_graph(orbital_ctx* ctx, const json& payload) {
  const Ctx& c = ctx->field;
  int n = payload.value("n", 3);
  long long a = 1, b = 1;
  if (payload.contains("window")) {
    a = payload.at("window").at(0).get<long long>();
    b = payload.at("window").at(1).get<long long>();
  }
  herm::HermSpace V = herm::nonsplit_space(c, n);
  herm::Lattice ref = bt::reference_vertex(V);
  json out;
  if (payload.value("components", true)) {
    auto u = bt::isotropic_vector(V);
    bt::Components comp = bt::components_z_dagger(V, ref, u, a, b);
    out["graph"] = io::graph_to_json(comp.graph);
    out["dagger_nodes"] = comp.dagger_nodes;
    out["components"] = comp.components;
    json uvec = json::array();
    for (auto& e : u) uvec.push_back(io::fe_to_json(e));
    out["u"] = uvec;
  } else {
    bt::BTGraph G = bt::build_graph(V, ref, a, b);
    out["graph"] = io::graph_to_json(G);
  }
  if (payload.value("dot", false)) {
    bt::BTGraph G = bt::build_graph(V, ref, a, b);
    out["dot"] = bt::graph_dot(G);
  }
  return out;
}

json run_rz_dim(orbital_ctx*, const json& payload) {
  json out;
  if (payload.value("ginzburg_rallis", false)) {
    auto rep = rz::ginzburg_rallis_report();
    out["ginzburg_rallis"] = {{"ambient_relative", rep.dim_unfiltered_relative},
                              {"filtered_relative", rep.dim_filtered_relative},
                              {"cycle_total", rep.dim_cycle_total},
                              {"ambient_total", rep.dim_ambient_total}};
  }
  if (payload.contains("bessel")) {
    const auto& b = payload.at("bessel");
    long long n = b.at("n").get<long long>();
    long long r = b.at("r").get<long long>();
    long long j = b.at("j").get<long long>();
    rz::RZDatum d = rz::bessel_pel_datum(n, r, j);
    out["bessel"] = {{"n", n},
                     {"r", r},
                     {"j", j},
                     {"relative_dimension", rz::relative_dimension(d)},
                     {"closed_form", rz::bessel_kr_dimension(n, r, j)}};
  }
  if (payload.contains("datum")) {
    rz::RZDatum d = io::rzdatum_from_json(payload.at("datum"));
    out["relative_dimension"] = rz::relative_dimension(d);
  }
  if (out.empty()) throw ConfigError("rz-dim needs ginzburg_rallis, bessel, or datum");
  return out;
}

json run_selftest(orbital_ctx* ctx, const json&) {
  const Ctx& c = ctx->field;
  PsiChar psi(c, ctx->psi_twist);
  json out;
  // reduced smoke checks across all modules
  {
    Fe w = Fe::omega(c);
    if (!w.conj().eq(-w)) throw Error("selftest: conjugation");
    padic::Cyc z = padic::Cyc::root(c->p, 1, 1);
    padic::Cyc sum = padic::Cyc::one(c->p);
    for (long long i = 1; i < c->p; ++i) sum += padic::Cyc::root(c->p, 1, i);
    if (!sum.is_zero()) throw Error("selftest: cyclotomic relation");
    (void)z;
  }
  {
    herm::BesselFrame F = herm::BesselFrame::make(c, 1, 1);
    herm::Lattice std4 = herm::Lattice::standard(c, F.n());
    if (!herm::is_self_dual(F.space, std4)) throw Error("selftest: frame self-duality");
    if (!herm::flag_data(F, std4)) throw Error("selftest: flag data");
  }
  {
    NormalForm gamma = orbit::random_symmetric(c, 1, 0, 1, 12345);
    FLReport rep = integrals::verify_fl(c, psi, gamma);
    if (rep.provenance != Provenance::Theorem || !rep.equal)
      throw Error("selftest: rank-0 fundamental lemma instance failed");
  }
  {
    auto rep = rz::ginzburg_rallis_report();
    if (rep.dim_unfiltered_relative != 9 || rep.dim_filtered_relative != 6 ||
        rep.dim_cycle_total != 5 || rep.dim_ambient_total != 10)
      throw Error("selftest: dimension formulas");
  }
  out["ok"] = true;
  out["p"] = c->p;
  out["precision"] = c->precision;
  return out;
}

}  // namespace

extern "C" {

orbital_ctx* orbital_ctx_create(const char* config_json) {
  try {
    json cfg = config_json && *config_json ? json::parse(config_json) : json::object();
    long long p = cfg.value("p", 3);
    int precision = cfg.value("precision", 0);
    long long eps = cfg.value("eps", 0);
    auto field = FieldConfig::make(p, precision, eps);
    auto* ctx = new orbital_ctx();
    ctx->field = field;
    ctx->psi_twist = cfg.value("psi_twist", 1);
    if (ctx->psi_twist % p == 0) {
      delete ctx;
      throw ConfigError("psi_twist must be a unit mod p");
    }
    return ctx;
  } catch (const std::exception& e) {
    global_error() = e.what();
    return nullptr;
  }
}

void orbital_ctx_destroy(orbital_ctx* ctx) { delete ctx; }

const char* orbital_last_error(const orbital_ctx* ctx) {
  return ctx ? ctx->last_error.c_str() : global_error().c_str();
}

int orbital_run(orbital_ctx* ctx, const char* command, const char* payload_json,
                char** result_json) {
  if (!ctx || !command || !result_json) return ORBITAL_E_CONFIG;
  *result_json = nullptr;
  try {
    json payload = payload_json && *payload_json ? json::parse(payload_json) : json::object();
    std::string cmd = command;
    json out;
    bool theorem_mismatch = false;
    if (cmd == "orb")
      out = run_orb(ctx, payload);
    else if (cmd == "verify-fl")
      out = run_verify_fl(ctx, payload, &theorem_mismatch);
    else if (cmd == "bt-graph")
      out = run_bt_graph(ctx, payload);
    else if (cmd == "rz-dim")
      out = run_rz_dim(ctx, payload);
    else if (cmd == "selftest")
      out = run_selftest(ctx, payload);
    else
      throw ConfigError("unknown command: " + cmd);
    out["p"] = ctx->field->p;
    out["precision"] = ctx->field->precision;
    out["psi_twist"] = ctx->psi_twist;
    out["version"] = orbital_version();
    *result_json = dup_string(out.dump(2));
    if (theorem_mismatch) {
      ctx->last_error = "theorem-case comparison failed";
      return ORBITAL_E_MISMATCH;
    }
    return ORBITAL_OK;
  } catch (const std::exception& e) {
    ctx->last_error = e.what();
    return classify_error(e);
  }
}

void orbital_free(char* s) { free(s); }

const char* orbital_version(void) { return "0.1.0"; }

}  // extern "C"
