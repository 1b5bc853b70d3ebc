#pragma once

#include <functional>
#include <vector>

#include "padic/field.hpp"

namespace orbital::padic {

// Dense matrix over F. Row-major; columns are images of basis vectors.
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols, const Ctx& c)
      : r_(rows), c_(cols), ctx_(c), e_((size_t)rows * (size_t)cols, Fe::zero(c)) {}

  static Mat identity(int n, const Ctx& c) {
    Mat m(n, n, c);
    for (int i = 0; i < n; ++i) m.at(i, i) = Fe::integer(c, 1);
    return m;
  }

  int rows() const { return r_; }
  int cols() const { return c_; }
  const Ctx& ctx() const { return ctx_; }

  Fe& at(int i, int j) { return e_[(size_t)i * (size_t)c_ + (size_t)j]; }
  const Fe& at(int i, int j) const { return e_[(size_t)i * (size_t)c_ + (size_t)j]; }

  std::vector<Fe> col(int j) const {
    std::vector<Fe> v;
    v.reserve((size_t)r_);
    for (int i = 0; i < r_; ++i) v.push_back(at(i, j));
    return v;
  }
  void set_col(int j, const std::vector<Fe>& v) {
    for (int i = 0; i < r_; ++i) at(i, j) = v[(size_t)i];
  }

  Mat operator*(const Mat& o) const;
  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  std::vector<Fe> apply(const std::vector<Fe>& v) const;
  Mat transpose() const;
  Mat conj() const;
  Mat conj_transpose() const { return conj().transpose(); }
  Mat inverse() const;  // throws RankDeficient / PrecisionExhausted
  Fe det() const;
  Mat scaled(const Fe& s) const;

  // coefficients of det(X*I - A), degree n down to 0
  std::vector<Fe> charpoly() const;

  bool is_identity() const;
  bool entries_integral() const;  // every entry in O_F (val >= 0)

 private:
  int r_ = 0, c_ = 0;
  Ctx ctx_;
  std::vector<Fe> e_;
};

// x^T J conj(y): the Hermitian pairing attached to a Gram matrix J
Fe herm_pair(const Mat& J, const std::vector<Fe>& x, const std::vector<Fe>& y);

}  // namespace orbital::padic
