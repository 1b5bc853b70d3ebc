#include "padic/matrix.hpp"

#include <algorithm>

namespace orbital::padic {

Mat Mat::operator*(const Mat& o) const {
  Mat z(r_, o.c_, ctx_);
  for (int i = 0; i < r_; ++i)
    for (int k = 0; k < c_; ++k) {
      const Fe& a = at(i, k);
      if (a.is_exact_zero()) continue;
      for (int j = 0; j < o.c_; ++j) {
        const Fe& b = o.at(k, j);
        if (b.is_exact_zero()) continue;
        z.at(i, j) = z.at(i, j) + a * b;
      }
    }
  return z;
}

Mat Mat::operator+(const Mat& o) const {
  Mat z = *this;
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) z.at(i, j) = at(i, j) + o.at(i, j);
  return z;
}

Mat Mat::operator-(const Mat& o) const {
  Mat z = *this;
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) z.at(i, j) = at(i, j) - o.at(i, j);
  return z;
}

std::vector<Fe> Mat::apply(const std::vector<Fe>& v) const {
  std::vector<Fe> z((size_t)r_, Fe::zero(ctx_));
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) {
      if (at(i, j).is_exact_zero() || v[(size_t)j].is_exact_zero()) continue;
      z[(size_t)i] = z[(size_t)i] + at(i, j) * v[(size_t)j];
    }
  return z;
}

Mat Mat::transpose() const {
  Mat z(c_, r_, ctx_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) z.at(j, i) = at(i, j);
  return z;
}

Mat Mat::conj() const {
  Mat z = *this;
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) z.at(i, j) = at(i, j).conj();
  return z;
}

Mat Mat::scaled(const Fe& s) const {
  Mat z = *this;
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) z.at(i, j) = at(i, j) * s;
  return z;
}

namespace {
// valuation for pivot choice; ZeroMod with comfortable absolute precision is
// treated as zero, a shallow ZeroMod flags an undecidable pivot
long long pivot_val(const Fe& x, bool& undecided) {
  switch (x.kind()) {
    case Fe::Kind::ExactZero: return Fe::kInfVal;
    case Fe::Kind::ZeroMod:
      if (x.absprec() < x.ctx()->precision / 2) undecided = true;
      return Fe::kInfVal;
    case Fe::Kind::Unit: return x.valuation();
  }
  return Fe::kInfVal;
}
}  // namespace

Mat Mat::inverse() const {
  if (r_ != c_) throw Error("inverse of non-square matrix");
  int n = r_;
  Mat a = *this;
  Mat inv = identity(n, ctx_);
  for (int col = 0; col < n; ++col) {
    int best = -1;
    long long bv = Fe::kInfVal;
    bool undecided = false;
    for (int i = col; i < n; ++i) {
      bool u = false;
      long long v = pivot_val(a.at(i, col), u);
      if (u) undecided = true;
      if (v < bv) {
        bv = v;
        best = i;
      }
    }
    if (best < 0 || bv >= Fe::kInfVal / 2) {
      if (undecided) throw PrecisionExhausted("pivot undetermined in matrix inverse");
      throw RankDeficient("singular matrix");
    }
    if (best != col)
      for (int j = 0; j < n; ++j) {
        std::swap(a.at(best, j), a.at(col, j));
        std::swap(inv.at(best, j), inv.at(col, j));
      }
    Fe piv = a.at(col, col).inv();
    for (int j = 0; j < n; ++j) {
      a.at(col, j) = a.at(col, j) * piv;
      inv.at(col, j) = inv.at(col, j) * piv;
    }
    for (int i = 0; i < n; ++i) {
      if (i == col) continue;
      Fe f = a.at(i, col);
      if (f.is_exact_zero()) continue;
      if (f.kind() == Fe::Kind::ZeroMod && f.absprec() >= ctx_->precision) continue;
      for (int j = 0; j < n; ++j) {
        a.at(i, j) = a.at(i, j) - f * a.at(col, j);
        inv.at(i, j) = inv.at(i, j) - f * inv.at(col, j);
      }
    }
  }
  return inv;
}

Fe Mat::det() const {
  if (r_ != c_) throw Error("det of non-square matrix");
  int n = r_;
  Mat a = *this;
  Fe d = Fe::integer(ctx_, 1);
  for (int col = 0; col < n; ++col) {
    int best = -1;
    long long bv = Fe::kInfVal;
    bool undecided = false;
    for (int i = col; i < n; ++i) {
      bool u = false;
      long long v = pivot_val(a.at(i, col), u);
      if (u) undecided = true;
      if (v < bv) {
        bv = v;
        best = i;
      }
    }
    if (best < 0 || bv >= Fe::kInfVal / 2) {
      if (undecided) throw PrecisionExhausted("pivot undetermined in det");
      return Fe::zero(ctx_);
    }
    if (best != col) {
      for (int j = 0; j < n; ++j) std::swap(a.at(best, j), a.at(col, j));
      d = -d;
    }
    d = d * a.at(col, col);
    Fe piv = a.at(col, col).inv();
    for (int i = col + 1; i < n; ++i) {
      Fe f = a.at(i, col) * piv;
      if (f.is_exact_zero()) continue;
      for (int j = col; j < n; ++j) a.at(i, j) = a.at(i, j) - f * a.at(col, j);
    }
  }
  return d;
}

std::vector<Fe> Mat::charpoly() const {
  // Faddeev–LeVerrier; divisions are by integers 1..n, exact in F (p odd
  // divisions by p only shift valuation)
  int n = r_;
  Mat M = Mat::identity(n, ctx_);
  std::vector<Fe> c((size_t)n + 1, Fe::zero(ctx_));
  c[0] = Fe::integer(ctx_, 1);
  Mat A = *this;
  Mat AM = A;
  for (int k = 1; k <= n; ++k) {
    AM = A * M;
    Fe tr = Fe::zero(ctx_);
    for (int i = 0; i < n; ++i) tr = tr + AM.at(i, i);
    Fe ck = tr * Fe::integer(ctx_, k).inv();
    c[(size_t)k] = -ck;
    M = AM;
    for (int i = 0; i < n; ++i) M.at(i, i) = M.at(i, i) - ck;
  }
  return c;  // X^n + c1 X^{n-1} + ... + cn, listed c0..cn
}

bool Mat::is_identity() const {
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) {
      Fe want = (i == j) ? Fe::integer(ctx_, 1) : Fe::zero(ctx_);
      if (!at(i, j).eq(want)) return false;
    }
  return true;
}

bool Mat::entries_integral() const {
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j)
      if (!at(i, j).is_zero_mod(0)) return false;
  return true;
}

Fe herm_pair(const Mat& J, const std::vector<Fe>& x, const std::vector<Fe>& y) {
  Fe s = Fe::zero(J.ctx());
  int n = J.rows();
  for (int i = 0; i < n; ++i) {
    if (x[(size_t)i].is_exact_zero()) continue;
    for (int j = 0; j < n; ++j) {
      if (J.at(i, j).is_exact_zero() || y[(size_t)j].is_exact_zero()) continue;
      s = s + x[(size_t)i] * J.at(i, j) * y[(size_t)j].conj();
    }
  }
  return s;
}

}  // namespace orbital::padic
