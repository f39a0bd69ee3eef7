#include "af/reconstruction.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "af/errors.hpp"

namespace af {

namespace {

// Integral of xi^n over [-1/2, 1/2].
double centered_power_integral(int n) { return n % 2 == 0 ? std::ldexp(1.0, -n) / (n + 1) : 0.0; }

std::vector<double> mul_linear(const std::vector<double>& p, double root) {
  std::vector<double> out(p.size() + 1, 0.0);
  for (size_t n = 0; n < p.size(); ++n) {
    out[n + 1] += p[n];
    out[n] -= root * p[n];
  }
  return out;
}

double horner(const std::vector<double>& c, double x) {
  double s = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * x + *it;
  return s;
}

double clamp_exponent(double r) { return std::clamp(r, kMinPowerExponent, kMaxPowerExponent); }

std::vector<double> sample_points(int n_samples) {
  std::vector<double> xi(n_samples + 2);
  for (int k = 0; k < n_samples + 2; ++k) xi[k] = -0.5 + static_cast<double>(k) / (n_samples + 1);
  return xi;
}

}  // namespace

double LocalPolynomial::at_xi(double xi) const { return horner(coeffs, xi); }

double LocalPolynomial::slope_xi(double xi) const {
  double s = 0.0;
  for (int n = degree(); n >= 1; --n) s = s * xi + n * coeffs[n];
  return s;
}

double LocalPolynomial::mean() const {
  double s = 0.0;
  for (size_t n = 0; n < coeffs.size(); ++n) s += coeffs[n] * centered_power_integral(static_cast<int>(n));
  return s;
}

double LocalPolynomial::moment(int p) const {
  double s = 0.0;
  for (size_t n = 0; n < coeffs.size(); ++n) s += coeffs[n] * centered_power_integral(p + static_cast<int>(n));
  return (p + 1) * std::ldexp(1.0, p) * s;
}

double PowerLaw::at_xi(double xi) const {
  const double jump = q_r - q_l;
  if (form == 1) return q_l + jump * std::pow(std::max(0.0, xi + 0.5), exponent);
  return q_r - jump * std::pow(std::max(0.0, 0.5 - xi), exponent);
}

double PowerLaw::slope_xi(double xi) const {
  const double jump = q_r - q_l;
  if (form == 1) return jump * exponent * std::pow(std::max(0.0, xi + 0.5), exponent - 1.0);
  return jump * exponent * std::pow(std::max(0.0, 0.5 - xi), exponent - 1.0);
}

double PowerLaw::mean() const {
  const double jump = q_r - q_l;
  return form == 1 ? q_l + jump / (exponent + 1.0) : q_r - jump / (exponent + 1.0);
}

LocalPolynomial parabolic(double q_l, double avg, double q_r, double dx) {
  const double c = 3.0 * (q_l + q_r) - 6.0 * avg;
  return {{avg - c / 12.0, q_r - q_l, c}, dx};
}

bool monotone_data(double q_l, double avg, double q_r) {
  return (q_l <= avg && avg <= q_r) || (q_l >= avg && avg >= q_r);
}

PowerLaw power_law(int which, double q_l, double avg, double q_r, double dx) {
  if (which != 1 && which != 2) throw InvalidArgument("power law form must be 1 or 2");
  if (!monotone_data(q_l, avg, q_r) || avg == q_l || avg == q_r) {
    throw DegenerateData("power law needs the average strictly between the endpoint values");
  }
  const double r = (q_r - avg) / (avg - q_l);
  return {which, q_l, q_r, which == 1 ? r : 1.0 / r, dx};
}

ReconChoice limited_parabola_or_power(double q_l, double avg, double q_r, double dx) {
  ReconChoice out;
  out.tag = ReconTag::Parabola;
  out.poly = parabolic(q_l, avg, q_r, dx);
  // An average within round-off of an endpoint is treated as equal to it.
  const double tol = kLimiterRoundoff * std::max({std::abs(q_l), std::abs(avg), std::abs(q_r)});
  if (std::abs(avg - q_l) <= tol) avg = q_l;
  if (std::abs(avg - q_r) <= tol) avg = q_r;
  if (!monotone_data(q_l, avg, q_r)) return out;
  const double third = std::abs(q_r - q_l) / 3.0;
  if (std::abs(avg - q_l) < third) {
    const double r = avg == q_l ? kMaxPowerExponent : (q_r - avg) / (avg - q_l);
    out.tag = ReconTag::PowerLaw1;
    out.law = {1, q_l, q_r, clamp_exponent(r), dx};
  } else if (std::abs(avg - q_r) < third) {
    const double s = avg == q_r ? kMaxPowerExponent : (avg - q_l) / (q_r - avg);
    out.tag = ReconTag::PowerLaw2;
    out.law = {2, q_l, q_r, clamp_exponent(s), dx};
  }
  return out;
}

LocalPolynomial interpolate_points_with_average(std::span<const double> xs, std::span<const double> ys, double avg,
                                                double dx) {
  double aux = 0.0;
  for (double x : xs) {
    if (std::abs(x / dx) < 1e-14) aux = 0.25;
  }
  return interpolate_points_with_average(xs, ys, avg, dx, aux);
}

LocalPolynomial interpolate_points_with_average(std::span<const double> xs, std::span<const double> ys, double avg,
                                                double dx, double aux_xi) {
  if (xs.size() != ys.size() || xs.empty()) throw InvalidArgument("interpolation needs matching non-empty nodes");
  const size_t n = xs.size();
  std::vector<double> xi(n);
  for (size_t j = 0; j < n; ++j) xi[j] = xs[j] / dx;
  for (size_t j = 0; j < n; ++j) {
    if (xi[j] == aux_xi) throw InvalidArgument("auxiliary node coincides with a constraint node");
    for (size_t l = 0; l < j; ++l) {
      if (xi[j] == xi[l]) throw InvalidArgument("interpolation nodes must be distinct");
    }
  }

  // Lagrange form of p1 expanded to monomials.
  std::vector<double> p1(n, 0.0);
  for (size_t j = 0; j < n; ++j) {
    std::vector<double> basis{1.0};
    double denom = 1.0;
    for (size_t l = 0; l < n; ++l) {
      if (l == j) continue;
      basis = mul_linear(basis, xi[l]);
      denom *= xi[j] - xi[l];
    }
    for (size_t k = 0; k < basis.size(); ++k) p1[k] += ys[j] * basis[k] / denom;
  }

  std::vector<double> p2{1.0};
  for (size_t j = 0; j < n; ++j) p2 = mul_linear(p2, xi[j]);
  const double norm = horner(p2, aux_xi);
  for (double& c : p2) c /= norm;

  double int_p1 = 0.0, int_p2 = 0.0, max_p2 = 0.0;
  for (size_t k = 0; k < p2.size(); ++k) {
    if (k < p1.size()) int_p1 += p1[k] * centered_power_integral(static_cast<int>(k));
    int_p2 += p2[k] * centered_power_integral(static_cast<int>(k));
    max_p2 = std::max(max_p2, std::abs(p2[k]));
  }
  if (std::abs(int_p2) < 1e-12 * max_p2) {
    throw SingularAverageConstraint("average constraint is singular for symmetric odd node sets");
  }
  const double alpha = (avg - int_p1) / int_p2;
  LocalPolynomial out{p2, dx};
  for (size_t k = 0; k < out.coeffs.size(); ++k) {
    out.coeffs[k] = alpha * p2[k] + (k < p1.size() ? p1[k] : 0.0);
  }
  return out;
}

LocalPolynomial moment_poly(double q_l, double q_r, std::span<const double> moments, double dx) {
  if (moments.empty()) throw InvalidArgument("moment_poly needs at least the average");
  const int k = static_cast<int>(moments.size()) - 1;
  const int n = k + 3;
  Eigen::MatrixXd a(n, n);
  Eigen::VectorXd b(n);
  for (int c = 0; c < n; ++c) {
    a(0, c) = std::pow(-0.5, c);
    a(1, c) = std::pow(0.5, c);
  }
  b(0) = q_l;
  b(1) = q_r;
  for (int p = 0; p <= k; ++p) {
    const double scale = (p + 1) * std::ldexp(1.0, p);
    for (int c = 0; c < n; ++c) a(2 + p, c) = scale * centered_power_integral(p + c);
    b(2 + p) = moments[p];
  }
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  if (!lu.isInvertible()) throw Error("moment constraint matrix is singular");
  const Eigen::VectorXd c = lu.solve(b);
  return {std::vector<double>(c.data(), c.data() + n), dx};
}

double power_law_derivative(int which, double q_l, double avg, double q_r, double dx) {
  if (which != 1 && which != 2) throw InvalidArgument("power law form must be 1 or 2");
  if (avg == q_l || avg == q_r) throw DegenerateData("power law derivative needs avg strictly inside");
  const double r = (q_r - avg) / (avg - q_l);
  return which == 1 ? (q_r - q_l) * r / dx : (q_r - q_l) / (r * dx);
}

bool monotone_on_samples(const LocalPolynomial& poly, int n_samples) {
  if (n_samples < 2) throw InvalidArgument("need at least two samples");
  const auto xi = sample_points(n_samples);
  std::vector<double> v(xi.size());
  double scale = 0.0;
  for (size_t k = 0; k < xi.size(); ++k) {
    v[k] = poly.at_xi(xi[k]);
    scale = std::max(scale, std::abs(v[k]));
  }
  const double tol = 1e-14 * std::max(1.0, scale);
  bool up = true, down = true;
  for (size_t k = 1; k < v.size(); ++k) {
    if (v[k] < v[k - 1] - tol) up = false;
    if (v[k] > v[k - 1] + tol) down = false;
  }
  return up || down;
}

bool within_range_on_samples(const LocalPolynomial& poly, double lo, double hi, int n_samples) {
  if (n_samples < 2) throw InvalidArgument("need at least two samples");
  const double tol = 1e-14 * std::max({1.0, std::abs(lo), std::abs(hi)});
  for (double xi : sample_points(n_samples)) {
    const double v = poly.at_xi(xi);
    if (v < lo - tol || v > hi + tol) return false;
  }
  return true;
}

}  // namespace af
