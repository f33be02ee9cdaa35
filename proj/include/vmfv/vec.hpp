#pragma once

#include <array>
#include <cassert>
#include <cmath>
#include <initializer_list>
#include <stdexcept>

namespace vmfv {

// Systems handled here are small (shallow water m=2, Euler m=3); a fixed
// capacity keeps states and fluxes allocation-free in the hot loops.
inline constexpr int kMaxDim = 8;

/// Fixed-capacity vector holding one state, flux, or coefficient set.
class Vec {
public:
  Vec() = default;
  explicit Vec(int n) : n_(n) {
    assert(n >= 0 && n <= kMaxDim);
    a_.fill(0.0);
  }
  Vec(std::initializer_list<double> xs) : n_(static_cast<int>(xs.size())) {
    assert(n_ <= kMaxDim);
    a_.fill(0.0);
    int i = 0;
    for (double x : xs) a_[i++] = x;
  }

  int size() const { return n_; }

  double& operator[](int i) {
    assert(i >= 0 && i < n_);
    return a_[i];
  }
  double operator[](int i) const {
    assert(i >= 0 && i < n_);
    return a_[i];
  }

  Vec& operator+=(const Vec& o) {
    assert(o.n_ == n_);
    for (int i = 0; i < n_; ++i) a_[i] += o.a_[i];
    return *this;
  }
  Vec& operator-=(const Vec& o) {
    assert(o.n_ == n_);
    for (int i = 0; i < n_; ++i) a_[i] -= o.a_[i];
    return *this;
  }
  Vec& operator*=(double s) {
    for (int i = 0; i < n_; ++i) a_[i] *= s;
    return *this;
  }

  friend Vec operator+(Vec a, const Vec& b) { return a += b; }
  friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
  friend Vec operator*(Vec a, double s) { return a *= s; }
  friend Vec operator*(double s, Vec a) { return a *= s; }
  friend Vec operator/(Vec a, double s) { return a *= (1.0 / s); }
  friend Vec operator-(Vec a) { return a *= -1.0; }

  double dot(const Vec& o) const {
    assert(o.n_ == n_);
    double r = 0.0;
    for (int i = 0; i < n_; ++i) r += a_[i] * o.a_[i];
    return r;
  }

  double inf_norm() const {
    double r = 0.0;
    for (int i = 0; i < n_; ++i) r = std::max(r, std::abs(a_[i]));
    return r;
  }

  bool all_finite() const {
    for (int i = 0; i < n_; ++i)
      if (!std::isfinite(a_[i])) return false;
    return true;
  }

  const double* data() const { return a_.data(); }
  double* data() { return a_.data(); }

private:
  int n_ = 0;
  std::array<double, kMaxDim> a_{};
};

/// Square matrix of the same small capacity. Row-major.
class Mat {
public:
  Mat() = default;
  explicit Mat(int n) : n_(n) {
    assert(n >= 0 && n <= kMaxDim);
    a_.fill(0.0);
  }
  Mat(std::initializer_list<std::initializer_list<double>> rows)
      : n_(static_cast<int>(rows.size())) {
    assert(n_ <= kMaxDim);
    a_.fill(0.0);
    int i = 0;
    for (const auto& row : rows) {
      assert(static_cast<int>(row.size()) == n_);
      int j = 0;
      for (double x : row) a_[i * kMaxDim + j++] = x;
      ++i;
    }
  }

  static Mat identity(int n) {
    Mat m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  int size() const { return n_; }

  double& operator()(int i, int j) {
    assert(i >= 0 && i < n_ && j >= 0 && j < n_);
    return a_[i * kMaxDim + j];
  }
  double operator()(int i, int j) const {
    assert(i >= 0 && i < n_ && j >= 0 && j < n_);
    return a_[i * kMaxDim + j];
  }

  Vec operator*(const Vec& v) const {
    assert(v.size() == n_);
    Vec r(n_);
    for (int i = 0; i < n_; ++i) {
      double s = 0.0;
      for (int j = 0; j < n_; ++j) s += (*this)(i, j) * v[j];
      r[i] = s;
    }
    return r;
  }

  Mat operator*(const Mat& o) const {
    assert(o.n_ == n_);
    Mat r(n_);
    for (int i = 0; i < n_; ++i)
      for (int k = 0; k < n_; ++k) {
        const double aik = (*this)(i, k);
        for (int j = 0; j < n_; ++j) r(i, j) += aik * o(k, j);
      }
    return r;
  }

  Vec col(int j) const {
    Vec c(n_);
    for (int i = 0; i < n_; ++i) c[i] = (*this)(i, j);
    return c;
  }
  void set_col(int j, const Vec& c) {
    assert(c.size() == n_);
    for (int i = 0; i < n_; ++i) (*this)(i, j) = c[i];
  }

  Mat transposed() const {
    Mat t(n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  double inf_norm() const {
    double r = 0.0;
    for (int i = 0; i < n_; ++i) {
      double row = 0.0;
      for (int j = 0; j < n_; ++j) row += std::abs((*this)(i, j));
      r = std::max(r, row);
    }
    return r;
  }

  bool is_identity() const {
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        if ((*this)(i, j) != (i == j ? 1.0 : 0.0)) return false;
    return true;
  }

  /// Solves (*this) x = rhs by Gaussian elimination with partial pivoting.
  Vec solve(Vec rhs) const {
    assert(rhs.size() == n_);
    Mat lu = *this;
    std::array<int, kMaxDim> perm{};
    for (int i = 0; i < n_; ++i) perm[i] = i;
    for (int c = 0; c < n_; ++c) {
      int piv = c;
      for (int r = c + 1; r < n_; ++r)
        if (std::abs(lu(r, c)) > std::abs(lu(piv, c))) piv = r;
      if (lu(piv, c) == 0.0)
        throw std::runtime_error("Mat::solve: singular matrix");
      if (piv != c) {
        for (int j = 0; j < n_; ++j) std::swap(lu(c, j), lu(piv, j));
        std::swap(rhs[c], rhs[piv]);
      }
      for (int r = c + 1; r < n_; ++r) {
        const double f = lu(r, c) / lu(c, c);
        lu(r, c) = 0.0;
        for (int j = c + 1; j < n_; ++j) lu(r, j) -= f * lu(c, j);
        rhs[r] -= f * rhs[c];
      }
    }
    Vec x(n_);
    for (int r = n_ - 1; r >= 0; --r) {
      double s = rhs[r];
      for (int j = r + 1; j < n_; ++j) s -= lu(r, j) * x[j];
      x[r] = s / lu(r, r);
    }
    return x;
  }

private:
  int n_ = 0;
  std::array<double, kMaxDim * kMaxDim> a_{};
};

inline Vec jump(const Vec& left, const Vec& right) { return right - left; }
inline Vec mean(const Vec& left, const Vec& right) {
  return (left + right) * 0.5;
}

}  // namespace vmfv
