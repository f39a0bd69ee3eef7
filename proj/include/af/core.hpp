#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "af/models.hpp"
#include "af/small.hpp"

namespace af {

// Equidistant periodic grid. Cell i covers [x_min + i dx, x_min + (i+1) dx);
// interface index i refers to x_{i+1/2} = x_min + (i+1) dx.
class Grid {
 public:
  Grid(int n_cells, double x_min, double x_max);

  int cells() const { return n_; }
  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }
  double dx() const { return dx_; }
  double length() const { return x_max_ - x_min_; }

  double iface_x(int i) const { return x_min_ + (i + 1) * dx_; }
  double center_x(int i) const { return x_min_ + (i + 0.5) * dx_; }
  int wrap(int i) const {
    const int r = i % n_;
    return r < 0 ? r + n_ : r;
  }

 private:
  int n_;
  double x_min_, x_max_, dx_;
};

// m components by n entries, stored component-major (structure of arrays).
class Field {
 public:
  Field() = default;
  Field(int components, int size, double value = 0.0)
      : m_(components), n_(size), data_(static_cast<size_t>(components) * size, value) {}

  int components() const { return m_; }
  int size() const { return n_; }

  double& operator()(int c, int i) { return data_[static_cast<size_t>(c) * n_ + i]; }
  double operator()(int c, int i) const { return data_[static_cast<size_t>(c) * n_ + i]; }

  std::span<double> component(int c) { return {data_.data() + static_cast<size_t>(c) * n_, static_cast<size_t>(n_)}; }
  std::span<const double> component(int c) const {
    return {data_.data() + static_cast<size_t>(c) * n_, static_cast<size_t>(n_)};
  }
  std::span<double> raw() { return data_; }
  std::span<const double> raw() const { return data_; }

  Vec at(int i) const {
    Vec v(m_);
    for (int c = 0; c < m_; ++c) v[c] = (*this)(c, i);
    return v;
  }
  void set(int i, const Vec& v) {
    for (int c = 0; c < m_; ++c) (*this)(c, i) = v[c];
  }

  friend bool operator==(const Field&, const Field&) = default;

 private:
  int m_ = 0;
  int n_ = 0;
  std::vector<double> data_;
};

enum class VariantKind { A, B, C };

// Degree-of-freedom layout of a state.
//   A: averages + shared interface values
//   B: A plus interior point values at offsets dx * xi_j
//   C: interface values + moments 0..n_moments-1 (moment 0 is the average)
struct Layout {
  VariantKind kind = VariantKind::A;
  std::vector<double> xi;
  int n_moments = 1;
};

struct State {
  Field iface;                  // q_{i+1/2}
  std::vector<Field> moments;   // moments[0] holds the cell averages
  std::vector<Field> interior;  // interior[j](c, i) = q_{i,j}
  std::vector<double> xi;

  State() = default;
  State(const Layout& layout, int components, int cells);

  int components() const { return iface.components(); }
  int cells() const { return iface.size(); }
  Field& avg() { return moments.front(); }
  const Field& avg() const { return moments.front(); }

  // Visit every stored scalar field; used by the linear-combination kernels.
  std::vector<Field*> fields();
  std::vector<const Field*> fields() const;

  friend bool operator==(const State&, const State&) = default;
};

// Initial datum: pointwise values plus an optional antiderivative that makes
// exact cell averages available for error measurement.
struct InitialDatum {
  std::string name;
  std::function<Vec(double)> value;
  std::function<Vec(double)> antiderivative;  // may be empty
};

struct Problem {
  Model model = Model::advection(1.0);
  InitialDatum datum;
  double x_min = 0.0;
  double x_max = 1.0;
  double t_end = 0.0;
};

// Pointwise samples for point values; 6-point Gauss-Legendre per cell for
// averages and moments.
State init_state(const InitialDatum& datum, const Grid& grid, const Layout& layout, int components);
State init_state(const Problem& problem, const Grid& grid, const Layout& layout);

// A_p = (p+1) 2^p / dx^(p+1).
double moment_normalization(int p, double dx);

struct L1Errors {
  double point = 0.0;
  double average = 0.0;
};

// Exact solution sampled pointwise and as cell averages at the state's time.
struct ExactSampler {
  std::function<Vec(double)> point;
  std::function<Vec(double, double)> average;  // mean over [a, b]
};

L1Errors l1_errors(const State& state, const ExactSampler& exact, const Grid& grid);

Vec total_conserved(const State& state, const Grid& grid);

}  // namespace af
