#pragma once

#include <json.hpp>

#include "btgraph/btgraph.hpp"
#include "orbint/verify.hpp"
#include "rzdim/rzdim.hpp"

namespace orbital::io {

using nlohmann::json;
using padic::Ctx;
using padic::Cyc;
using padic::Fe;
using padic::Mat;

json fe_to_json(const Fe& x);              // literal string "p^v*(a+b*w)"
Fe fe_from_json(const Ctx& c, const json& j);

json cyc_to_json(const Cyc& z);            // {level, coeffs}
Cyc cyc_from_json(long long p, const json& j);

json mat_to_json(const Mat& m);
Mat mat_from_json(const Ctx& c, const json& j);

json lattice_to_json(const herm::Lattice& L);  // matrix of (valuation, unit) pairs

json normal_form_to_json(const orbit::NormalForm& nf);  // {t: [...], core: [[...]]}
orbit::NormalForm normal_form_from_json(const Ctx& c, int m, int r, const json& j);

json orbpoly_to_json(const integrals::OrbPoly& poly);
json support_to_json(const integrals::SupportReport& s);
json fl_report_to_json(const integrals::FLReport& r);

json graph_to_json(const bt::BTGraph& g);
rz::RZDatum rzdatum_from_json(const json& j);

}  // namespace orbital::io
