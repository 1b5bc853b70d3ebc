#pragma once

#include <map>
#include <string>

#include "padic/cyclotomic.hpp"

namespace orbital::integrals {

using padic::Cyc;

// Finitely supported sum  sum_v c_v X^v  with X = q^{-s}, coefficients exact
// cyclotomic integers. Orb(gamma, f', s) specializes through X.
struct OrbPoly {
  long long p = 3;
  std::map<long long, Cyc> terms;

  static OrbPoly zero(long long p) { return OrbPoly{p, {}}; }

  void add_term(long long v, const Cyc& c) {
    auto it = terms.find(v);
    if (it == terms.end()) {
      if (!c.is_zero()) terms.emplace(v, c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
  }

  // value at s = 0 (X = 1)
  Cyc value_at_zero() const {
    Cyc s = Cyc::zero(p);
    for (auto& [v, c] : terms) s += c;
    return s;
  }
  // sum_v v c_v, so that d/ds|_0 = -(log q) * derivative_coefficient
  Cyc derivative_coefficient() const {
    Cyc s = Cyc::zero(p);
    for (auto& [v, c] : terms) s += c.scaled(v);
    return s;
  }

  OrbPoly galois(long long c) const {
    OrbPoly o = zero(p);
    for (auto& [v, t] : terms) o.add_term(v, t.galois(c));
    return o;
  }
  OrbPoly scaled(const Cyc& f) const {
    OrbPoly o = zero(p);
    for (auto& [v, t] : terms) o.add_term(v, t * f);
    return o;
  }
  OrbPoly operator+(const OrbPoly& other) const {
    OrbPoly o = *this;
    for (auto& [v, t] : other.terms) o.add_term(v, t);
    return o;
  }

  bool operator==(const OrbPoly& o) const { return p == o.p && terms == o.terms; }
  bool operator!=(const OrbPoly& o) const { return !(*this == o); }

  std::string str() const {
    if (terms.empty()) return "0";
    std::string s;
    for (auto& [v, c] : terms) {
      if (!s.empty()) s += " + ";
      s += "(" + c.str() + ")*X^" + std::to_string(v);
    }
    return s;
  }
};

struct SupportReport {
  long long window_exponent = 0;  // size of the final verified window
  long long contributing = 0;     // number of contributing terms
  long long candidates = 0;       // candidates examined
  bool saturated = false;         // two successive enlargements were stable
  double wall_ms = 0;
};

}  // namespace orbital::integrals
