#pragma once

// Fixed-capacity vectors and matrices for m-component states (m <= 3).

#include <array>
#include <cassert>
#include <cmath>
#include <initializer_list>

namespace af {

inline constexpr int kMaxComponents = 3;

class Vec {
 public:
  Vec() = default;
  explicit Vec(int m, double value = 0.0) : m_(m) {
    assert(m >= 0 && m <= kMaxComponents);
    v_.fill(0.0);
    for (int k = 0; k < m; ++k) v_[k] = value;
  }
  Vec(std::initializer_list<double> values) : m_(static_cast<int>(values.size())) {
    assert(m_ <= kMaxComponents);
    v_.fill(0.0);
    int k = 0;
    for (double x : values) v_[k++] = x;
  }

  int size() const { return m_; }
  double& operator[](int k) { return v_[k]; }
  double operator[](int k) const { return v_[k]; }

  Vec& operator+=(const Vec& o) {
    for (int k = 0; k < m_; ++k) v_[k] += o.v_[k];
    return *this;
  }
  Vec& operator-=(const Vec& o) {
    for (int k = 0; k < m_; ++k) v_[k] -= o.v_[k];
    return *this;
  }
  Vec& operator*=(double s) {
    for (int k = 0; k < m_; ++k) v_[k] *= s;
    return *this;
  }
  friend Vec operator+(Vec a, const Vec& b) { return a += b; }
  friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
  friend Vec operator*(double s, Vec a) { return a *= s; }
  friend Vec operator*(Vec a, double s) { return a *= s; }

  double max_abs() const {
    double r = 0.0;
    for (int k = 0; k < m_; ++k) r = std::max(r, std::abs(v_[k]));
    return r;
  }

 private:
  int m_ = 0;
  std::array<double, kMaxComponents> v_{};
};

class Mat {
 public:
  Mat() = default;
  explicit Mat(int m) : m_(m) { a_.fill(0.0); }

  static Mat identity(int m) {
    Mat r(m);
    for (int k = 0; k < m; ++k) r(k, k) = 1.0;
    return r;
  }
  static Mat diagonal(const Vec& d) {
    Mat r(d.size());
    for (int k = 0; k < d.size(); ++k) r(k, k) = d[k];
    return r;
  }

  int size() const { return m_; }
  double& operator()(int r, int c) { return a_[r * kMaxComponents + c]; }
  double operator()(int r, int c) const { return a_[r * kMaxComponents + c]; }

  friend Mat operator*(const Mat& x, const Mat& y) {
    Mat r(x.m_);
    for (int i = 0; i < x.m_; ++i)
      for (int j = 0; j < x.m_; ++j) {
        double s = 0.0;
        for (int k = 0; k < x.m_; ++k) s += x(i, k) * y(k, j);
        r(i, j) = s;
      }
    return r;
  }
  friend Vec operator*(const Mat& x, const Vec& v) {
    Vec r(x.m_);
    for (int i = 0; i < x.m_; ++i) {
      double s = 0.0;
      for (int k = 0; k < x.m_; ++k) s += x(i, k) * v[k];
      r[i] = s;
    }
    return r;
  }
  friend Mat operator+(Mat x, const Mat& y) {
    for (int i = 0; i < x.m_; ++i)
      for (int j = 0; j < x.m_; ++j) x(i, j) += y(i, j);
    return x;
  }
  friend Mat operator-(Mat x, const Mat& y) {
    for (int i = 0; i < x.m_; ++i)
      for (int j = 0; j < x.m_; ++j) x(i, j) -= y(i, j);
    return x;
  }

  double max_abs() const {
    double r = 0.0;
    for (int i = 0; i < m_; ++i)
      for (int j = 0; j < m_; ++j) r = std::max(r, std::abs((*this)(i, j)));
    return r;
  }

 private:
  int m_ = 0;
  std::array<double, kMaxComponents * kMaxComponents> a_{};
};

}  // namespace af
