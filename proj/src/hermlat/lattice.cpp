#include "hermlat/lattice.hpp"

#include <algorithm>
#include <sstream>

namespace orbital::herm {

using padic::Fe;

Lattice Lattice::standard(const Ctx& c, int n) {
  Lattice L;
  L.ctx_ = c;
  L.n_ = n;
  L.basis_ = Mat::identity(n, c);
  L.piv_.assign((size_t)n, 0);
  return L;
}

Lattice Lattice::from_generators(const Ctx& c, int n,
                                 const std::vector<std::vector<Fe>>& gens) {
  Lattice L;
  L.ctx_ = c;
  L.n_ = n;
  L.canonicalize(gens);
  return L;
}

Lattice Lattice::from_cols(const Mat& m) {
  std::vector<std::vector<Fe>> cols;
  for (int j = 0; j < m.cols(); ++j) cols.push_back(m.col(j));
  return from_generators(m.ctx(), m.rows(), cols);
}

namespace {
// valuation of an entry for pivoting; ExactZero -> +inf, ZeroMod -> flagged
long long entry_val(const Fe& x, bool& undecided) {
  switch (x.kind()) {
    case Fe::Kind::ExactZero: return Fe::kInfVal;
    case Fe::Kind::ZeroMod:
      if (x.absprec() >= x.ctx()->precision / 2) return Fe::kInfVal;  // treat as 0
      undecided = true;
      return Fe::kInfVal;
    case Fe::Kind::Unit: return x.valuation();
  }
  return Fe::kInfVal;
}

// rebuild an entry from its canonical residue, as an exact representative
Fe residue_rep(const Ctx& c, const Fe& x, long long modexp) {
  Fe::Residue r = x.residue_mod(modexp);
  if (r.a == 0 && r.b == 0) return Fe::zero(c);
  return Fe::make_unit(c, r.val, r.a, r.b, c->precision);
}
}  // namespace

void Lattice::canonicalize(std::vector<std::vector<Fe>> cols) {
  const int n = n_;
  const Ctx& c = ctx_;
  if ((int)cols.size() < n) throw RankDeficient("fewer generators than rank");
  // column echelon, processing rows bottom-up so the result is upper
  // triangular with pivot of column i at row i
  std::vector<std::vector<Fe>> placed((size_t)n);
  for (int row = n - 1; row >= 0; --row) {
    int best = -1;
    long long bv = Fe::kInfVal;
    bool undecided = false;
    for (size_t j = 0; j < cols.size(); ++j) {
      bool u = false;
      long long v = entry_val(cols[j][(size_t)row], u);
      undecided |= u;
      if (v < bv) {
        bv = v;
        best = (int)j;
      }
    }
    if (best < 0) {
      if (undecided) throw PrecisionExhausted("pivot choice undetermined");
      throw RankDeficient("no pivot in row " + std::to_string(row));
    }
    std::vector<Fe> pivcol = cols[(size_t)best];
    cols.erase(cols.begin() + best);
    Fe piv = pivcol[(size_t)row];
    // normalize pivot to p^k
    long long k = piv.valuation();
    Fe unit_inv = (piv * Fe::from_parts(c, -k, 1, 0)).inv();  // (piv/p^k)^{-1}
    for (auto& e : pivcol) e = e * unit_inv;
    pivcol[(size_t)row] = Fe::from_parts(c, k, 1, 0);
    for (int i = row + 1; i < n; ++i) pivcol[(size_t)i] = Fe::zero(c);
    // clear this row in all remaining generators
    for (auto& col : cols) {
      Fe& e = col[(size_t)row];
      bool u = false;
      if (entry_val(e, u) >= Fe::kInfVal) {
        if (u) throw PrecisionExhausted("elimination undetermined");
        e = Fe::zero(c);
        continue;
      }
      Fe q = e * Fe::from_parts(c, -k, 1, 0);  // e / p^k
      for (int i = 0; i <= row; ++i) col[(size_t)i] = col[(size_t)i] - q * pivcol[(size_t)i];
      col[(size_t)row] = Fe::zero(c);
    }
    placed[(size_t)row] = std::move(pivcol);
  }
  piv_.assign((size_t)n, 0);
  for (int i = 0; i < n; ++i) piv_[(size_t)i] = placed[(size_t)i][(size_t)i].valuation();
  // reduce entries above pivots: process columns left to right, inner rows
  // top-down is fine because subtracting col_i only touches rows <= i
  for (int j = 0; j < n; ++j)
    for (int i = j - 1; i >= 0; --i) {
      Fe& e = placed[(size_t)j][(size_t)i];
      bool u = false;
      if (entry_val(e, u) >= Fe::kInfVal) {
        e = Fe::zero(c);
        continue;
      }
      Fe r = residue_rep(c, e, piv_[(size_t)i]);
      Fe q = (e - r) * Fe::from_parts(c, -piv_[(size_t)i], 1, 0);
      bool uq = false;
      if (entry_val(q, uq) < Fe::kInfVal)
        for (int t = 0; t <= i; ++t)
          placed[(size_t)j][(size_t)t] =
              placed[(size_t)j][(size_t)t] - q * placed[(size_t)i][(size_t)t];
      placed[(size_t)j][(size_t)i] = r;
    }
  basis_ = Mat(n, n, c);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) basis_.at(i, j) = placed[(size_t)j][(size_t)i];
}

long long Lattice::index_val() const {
  long long s = 0;
  for (long long k : piv_) s += k;
  return s;
}

bool Lattice::contains(const std::vector<Fe>& v) const {
  std::vector<Fe> w = v;
  for (int i = n_ - 1; i >= 0; --i) {
    const Fe& e = w[(size_t)i];
    bool integral;
    try {
      integral = e.is_zero_mod(piv_[(size_t)i]);
    } catch (const PrecisionExhausted&) {
      throw;
    }
    if (!integral) return false;
    if (e.is_exact_zero()) continue;
    if (e.kind() == Fe::Kind::ZeroMod) continue;
    Fe q = e * Fe::from_parts(ctx_, -piv_[(size_t)i], 1, 0);
    for (int t = 0; t <= i; ++t) w[(size_t)t] = w[(size_t)t] - q * basis_.at(t, i);
  }
  return true;
}

bool Lattice::contains(const Lattice& other) const {
  for (int j = 0; j < n_; ++j)
    if (!contains(other.basis_.col(j))) return false;
  return true;
}

bool Lattice::operator==(const Lattice& o) const {
  if (n_ != o.n_ || piv_ != o.piv_) return false;
  return key() == o.key();
}

Lattice Lattice::scaled(long long k) const {
  Lattice L = *this;
  for (int j = 0; j < n_; ++j)
    for (int i = 0; i < n_; ++i)
      if (!L.basis_.at(i, j).is_exact_zero())
        L.basis_.at(i, j) = L.basis_.at(i, j).mul_ppow(k);
  for (auto& v : L.piv_) v += k;
  return L;
}

Lattice Lattice::sum(const Lattice& other) const {
  std::vector<std::vector<Fe>> gens;
  for (int j = 0; j < n_; ++j) gens.push_back(basis_.col(j));
  for (int j = 0; j < n_; ++j) gens.push_back(other.basis_.col(j));
  return from_generators(ctx_, n_, gens);
}

Lattice Lattice::std_dual() const {
  Mat d = basis_.inverse().transpose();
  return from_cols(d);
}

Lattice Lattice::intersect(const Lattice& other) const {
  return std_dual().sum(other.std_dual()).std_dual();
}

Lattice Lattice::apply(const Mat& g) const { return from_cols(g * basis_); }

Lattice Lattice::conjugated() const { return from_cols(basis_.conj()); }

Lattice Lattice::prefix_sublattice(int i) const {
  Lattice L;
  L.ctx_ = ctx_;
  L.n_ = i;
  L.basis_ = Mat(i, i, ctx_);
  for (int a = 0; a < i; ++a)
    for (int b = 0; b < i; ++b) L.basis_.at(a, b) = basis_.at(a, b);
  L.piv_.assign(piv_.begin(), piv_.begin() + i);
  return L;
}

Lattice Lattice::graded_band(int a, int b) const {
  std::vector<std::vector<Fe>> gens;
  for (int j = a; j < b; ++j) {
    std::vector<Fe> v;
    for (int i = a; i < b; ++i) v.push_back(basis_.at(i, j));
    gens.push_back(std::move(v));
  }
  return from_generators(ctx_, b - a, gens);
}

Lattice Lattice::intersect_coords(const std::vector<int>& S) const {
  int s = (int)S.size();
  std::vector<int> order = S;  // S-rows first, complement after
  std::vector<bool> in_s((size_t)n_, false);
  for (int idx : S) in_s[(size_t)idx] = true;
  for (int i = 0; i < n_; ++i)
    if (!in_s[(size_t)i]) order.push_back(i);
  // permute coordinates, canonicalize, take the prefix block
  std::vector<std::vector<Fe>> gens;
  for (int j = 0; j < n_; ++j) {
    std::vector<Fe> v((size_t)n_, Fe::zero(ctx_));
    for (int i = 0; i < n_; ++i) v[(size_t)i] = basis_.at(order[(size_t)i], j);
    gens.push_back(std::move(v));
  }
  Lattice perm = from_generators(ctx_, n_, gens);
  return perm.prefix_sublattice(s);
}

Lattice Lattice::intersect_subspace(const Mat& B_S) const {
  // {d in F^s : B_S d in Lambda}; columns of B_S assumed independent
  int s = B_S.cols();
  // coordinates of B_S columns in the lattice basis
  Mat Binv = basis_.inverse();
  Mat M = Binv * B_S;  // n x s, need d with M d integral
  // {d : M d in O^n} is the std-dual of the row span of M
  std::vector<std::vector<Fe>> rows;
  for (int i = 0; i < n_; ++i) {
    std::vector<Fe> r;
    for (int j = 0; j < s; ++j) r.push_back(M.at(i, j));
    rows.push_back(std::move(r));
  }
  // row span may be rank-deficient only if B_S columns are dependent
  Lattice R = Lattice::from_generators(ctx_, s, rows);
  return R.std_dual();
}

std::string Lattice::key() const {
  std::ostringstream os;
  for (int i = 0; i < n_; ++i) os << piv_[(size_t)i] << ";";
  for (int j = 0; j < n_; ++j)
    for (int i = 0; i < j; ++i) {
      Fe::Residue r = basis_.at(i, j).residue_mod(piv_[(size_t)i]);
      os << r.val << "," << r.a << "," << r.b << ";";
    }
  return os.str();
}

Lattice dual_lattice(const HermSpace& V, const Lattice& L) {
  Mat A = L.basis().conj().transpose() * V.gram.transpose();
  return Lattice::from_cols(A.inverse());
}

bool is_integral(const HermSpace& V, const Lattice& L) {
  Mat G = L.basis().conj_transpose() * V.gram.transpose() * L.basis();
  // (col_i, col_j) = col_i^T J conj(col_j); G as computed equals conj of that
  // pairing matrix, integrality is the same either way
  return G.entries_integral();
}

bool is_vertex(const HermSpace& V, const Lattice& L) {
  Lattice D = dual_lattice(V, L);
  return D.contains(L) && L.scaled(-1).contains(D);
}

bool is_self_dual(const HermSpace& V, const Lattice& L) {
  return dual_lattice(V, L) == L;
}

int vertex_type(const HermSpace& V, const Lattice& L) {
  Lattice D = dual_lattice(V, L);
  if (!(D.contains(L) && L.scaled(-1).contains(D)))
    throw NotAVertexLattice("chain condition fails");
  return (int)(L.index_val() - D.index_val());
}

}  // namespace orbital::herm
