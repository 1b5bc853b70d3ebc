#pragma once

#include <string>
#include <vector>

#include "core/errors.hpp"

namespace orbital::rz {

// Signature table of an unramified EL/PEL datum, filtered or not. Embeddings
// come in conjugate pairs phi, phibar; only the signatures enter the
// dimension formulas.
struct RZDatum {
  enum class Case { EL, PEL };
  Case kind = Case::EL;
  bool filtered = false;
  // one entry per embedding phi: (r_phi, s_phi)
  struct Signature {
    long long r = 0, s = 0;
    // filtered: per-layer (r^i, s^i), summing to (r, s)
    std::vector<std::pair<long long, long long>> layers;
  };
  std::vector<Signature> sig;
  // PEL symmetry: embedding i is conjugate to conj_of[i]
  std::vector<int> conj_of;

  void validate() const;  // throws InvalidDatum
};

// relative dimension over Spf O_breveE:
//   EL unfiltered:   sum_phi r_phi s_phi
//   PEL unfiltered:  (1/2) sum_phi r_phi s_phi
//   EL filtered:     sum_phi sum_j s^j_phi sum_{i<=j} r^i_phi
//   PEL filtered:    half of the EL sum (self-dual layer symmetry)
long long relative_dimension(const RZDatum& d);

// the Bessel-type filtered unitary datum: signature (r, n-r), layers
// 1^j | n-2j | 1^j with (r^i, s^i) = (0,1) below the middle
RZDatum bessel_pel_datum(long long n, long long r, long long j);
// closed form r(n-r) - rj for the datum above
long long bessel_kr_dimension(long long n, long long r, long long j);

struct GinzburgRallisReport {
  long long dim_unfiltered_relative = 0;  // 9
  long long dim_filtered_relative = 0;    // 6
  long long dim_cycle_total = 0;          // 5
  long long dim_ambient_total = 0;        // 10
};
GinzburgRallisReport ginzburg_rallis_report();

}  // namespace orbital::rz
