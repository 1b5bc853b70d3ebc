#include "rzdim/rzdim.hpp"

namespace orbital::rz {

void RZDatum::validate() const {
  if (sig.empty()) throw InvalidDatum("no embeddings");
  for (const auto& s : sig) {
    if (s.r < 0 || s.s < 0) throw InvalidDatum("negative signature entry");
    if (filtered) {
      long long rs = 0, ss = 0;
      for (auto& [ri, si] : s.layers) {
        if (ri < 0 || si < 0) throw InvalidDatum("negative layer signature");
        rs += ri;
        ss += si;
      }
      if (rs != s.r || ss != s.s) throw InvalidDatum("layer signatures do not sum");
    }
  }
  if (kind == Case::PEL) {
    if (conj_of.size() != sig.size()) throw InvalidDatum("missing conjugation pairing");
    for (size_t i = 0; i < sig.size(); ++i) {
      size_t j = (size_t)conj_of[i];
      if (j >= sig.size() || (size_t)conj_of[j] != i)
        throw InvalidDatum("conjugation pairing is not an involution");
      if (sig[i].r != sig[j].s || sig[i].s != sig[j].r)
        throw InvalidDatum("signatures violate r_phi = s_phibar");
      if (filtered) {
        size_t L = sig[i].layers.size();
        if (L != sig[j].layers.size()) throw InvalidDatum("layer count mismatch");
        for (size_t k = 0; k < L; ++k)
          if (sig[i].layers[k].first != sig[j].layers[L - 1 - k].second)
            throw InvalidDatum("layers violate r^i_phi = s^{l+1-i}_phibar");
      }
    }
  }
}

long long relative_dimension(const RZDatum& d) {
  d.validate();
  long long total = 0;
  for (const auto& s : d.sig) {
    if (!d.filtered) {
      total += s.r * s.s;
    } else {
      // sum_j s^j sum_{i<=j} r^i
      long long rsum = 0;
      for (auto& [ri, si] : s.layers) {
        rsum += ri;
        total += si * rsum;
      }
    }
  }
  if (d.kind == RZDatum::Case::PEL) {
    if (total % 2 != 0) throw InvalidDatum("odd PEL dimension sum");
    total /= 2;
  }
  return total;
}

RZDatum bessel_pel_datum(long long n, long long r, long long j) {
  if (n < 1 || r < 0 || r > n || j < 0 || n < r + 2 * j)
    throw InvalidDatum("bessel datum needs 0 <= r, n >= r + 2j");
  RZDatum d;
  d.kind = RZDatum::Case::PEL;
  d.filtered = true;
  RZDatum::Signature phi, phibar;
  phi.r = r;
  phi.s = n - r;
  phibar.r = n - r;
  phibar.s = r;
  for (long long i = 0; i < j; ++i) phi.layers.push_back({0, 1});
  phi.layers.push_back({r, n - r - 2 * j});
  for (long long i = 0; i < j; ++i) phi.layers.push_back({0, 1});
  for (long long i = 0; i < j; ++i) phibar.layers.push_back({1, 0});
  phibar.layers.push_back({n - r - 2 * j, r});
  for (long long i = 0; i < j; ++i) phibar.layers.push_back({1, 0});
  d.sig = {phi, phibar};
  d.conj_of = {1, 0};
  return d;
}

long long bessel_kr_dimension(long long n, long long r, long long j) {
  return r * (n - r) - r * j;
}

GinzburgRallisReport ginzburg_rallis_report() {
  GinzburgRallisReport rep;
  // GL_6 over Q_p, mu = (0^3, 1^3): one embedding with (r, s) = (3, 3)
  RZDatum amb;
  amb.kind = RZDatum::Case::EL;
  amb.sig = {{3, 3, {}}};
  rep.dim_unfiltered_relative = relative_dimension(amb);
  // filtered by 2-4-6 with (r^i, s^i) = (1, 1) per layer
  RZDatum fil;
  fil.kind = RZDatum::Case::EL;
  fil.filtered = true;
  RZDatum::Signature s;
  s.r = 3;
  s.s = 3;
  s.layers = {{1, 1}, {1, 1}, {1, 1}};
  fil.sig = {s};
  rep.dim_filtered_relative = relative_dimension(fil);
  // the cycle sits over one Lubin-Tate factor instead of three, dropping two
  // relative dimensions; totals add 1 for the formal base
  long long cycle_relative = rep.dim_filtered_relative - 2;
  rep.dim_cycle_total = cycle_relative + 1;
  rep.dim_ambient_total = rep.dim_unfiltered_relative + 1;
  return rep;
}

}  // namespace orbital::rz
