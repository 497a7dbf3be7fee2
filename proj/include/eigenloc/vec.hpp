#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>

namespace eigenloc {

using Complex = std::complex<double>;

// Small real vector with runtime dimension. Covers points in R^n (n <= 4)
// and points on S^n embedded in R^{n+1}.
class VecN {
 public:
  static constexpr int kMaxDim = 6;

  VecN() = default;
  explicit VecN(int dim) : dim_(check_dim(dim)) { a_.fill(0.0); }
  VecN(std::initializer_list<double> xs) : dim_(check_dim(int(xs.size()))) {
    a_.fill(0.0);
    int i = 0;
    for (double x : xs) a_[i++] = x;
  }

  int size() const { return dim_; }
  double operator[](int i) const { return a_[i]; }
  double& operator[](int i) { return a_[i]; }

  VecN& operator+=(const VecN& o) {
    for (int i = 0; i < dim_; ++i) a_[i] += o.a_[i];
    return *this;
  }
  VecN& operator-=(const VecN& o) {
    for (int i = 0; i < dim_; ++i) a_[i] -= o.a_[i];
    return *this;
  }
  VecN& operator*=(double s) {
    for (int i = 0; i < dim_; ++i) a_[i] *= s;
    return *this;
  }

  friend VecN operator+(VecN a, const VecN& b) { return a += b; }
  friend VecN operator-(VecN a, const VecN& b) { return a -= b; }
  friend VecN operator*(double s, VecN a) { return a *= s; }

  double dot(const VecN& o) const {
    double s = 0;
    for (int i = 0; i < dim_; ++i) s += a_[i] * o.a_[i];
    return s;
  }
  double norm2() const { return dot(*this); }
  double norm() const { return std::sqrt(norm2()); }

  VecN normalized() const {
    double r = norm();
    if (r == 0.0) throw std::invalid_argument("cannot normalize zero vector");
    VecN v = *this;
    v *= 1.0 / r;
    return v;
  }

 private:
  static int check_dim(int d) {
    if (d < 0 || d > kMaxDim) throw std::invalid_argument("VecN dimension out of range");
    return d;
  }
  std::array<double, kMaxDim> a_{};
  int dim_ = 0;
};

// Value of an R^m- or C^m-valued field at a point, m <= 4.
class CVec {
 public:
  static constexpr int kMaxComp = 4;

  CVec() = default;
  explicit CVec(int m) : m_(check(m)) {}
  CVec(std::initializer_list<Complex> cs) : m_(check(int(cs.size()))) {
    int i = 0;
    for (auto c : cs) a_[i++] = c;
  }
  static CVec real(std::initializer_list<double> xs) {
    CVec v(int(xs.size()));
    int i = 0;
    for (double x : xs) v.a_[i++] = x;
    return v;
  }

  int size() const { return m_; }
  Complex operator[](int i) const { return a_[i]; }
  Complex& operator[](int i) { return a_[i]; }

  CVec& operator+=(const CVec& o) {
    for (int i = 0; i < m_; ++i) a_[i] += o.a_[i];
    return *this;
  }
  CVec& operator-=(const CVec& o) {
    for (int i = 0; i < m_; ++i) a_[i] -= o.a_[i];
    return *this;
  }
  CVec& operator*=(Complex s) {
    for (int i = 0; i < m_; ++i) a_[i] *= s;
    return *this;
  }
  friend CVec operator+(CVec a, const CVec& b) { return a += b; }
  friend CVec operator-(CVec a, const CVec& b) { return a -= b; }
  friend CVec operator*(Complex s, CVec a) { return a *= s; }

  void add_scaled(Complex s, const CVec& o) {
    for (int i = 0; i < m_; ++i) a_[i] += s * o.a_[i];
  }

  double max_abs() const {
    double v = 0;
    for (int i = 0; i < m_; ++i) v = std::max(v, std::abs(a_[i]));
    return v;
  }
  double max_abs_imag() const {
    double v = 0;
    for (int i = 0; i < m_; ++i) v = std::max(v, std::abs(a_[i].imag()));
    return v;
  }
  CVec conj() const {
    CVec v(m_);
    for (int i = 0; i < m_; ++i) v.a_[i] = std::conj(a_[i]);
    return v;
  }

 private:
  static int check(int m) {
    if (m < 0 || m > kMaxComp) throw std::invalid_argument("CVec component count out of range");
    return m;
  }
  std::array<Complex, kMaxComp> a_{};
  int m_ = 0;
};

}  // namespace eigenloc
