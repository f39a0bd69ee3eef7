#pragma once

#include <span>
#include <vector>

namespace af {

// Polynomial in the reference coordinate xi = x / dx, xi in [-1/2, 1/2].
struct LocalPolynomial {
  std::vector<double> coeffs;  // coeffs[n] multiplies xi^n
  double dx = 1.0;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  double at_xi(double xi) const;
  double slope_xi(double xi) const;  // d/dxi
  double at(double x) const { return at_xi(x / dx); }
  double slope(double x) const { return slope_xi(x / dx) / dx; }
  double mean() const;
  // (p+1) 2^p * integral of xi^p p(xi) over [-1/2, 1/2].
  double moment(int p) const;
};

// Form 1: q_l + (q_r - q_l) (xi + 1/2)^r
// Form 2: q_r - (q_r - q_l) (1/2 - xi)^r
struct PowerLaw {
  int form = 1;
  double q_l = 0.0;
  double q_r = 0.0;
  double exponent = 1.0;
  double dx = 1.0;

  double at_xi(double xi) const;
  double slope_xi(double xi) const;
  double at(double x) const { return at_xi(x / dx); }
  double mean() const;
};

enum class ReconTag { Parabola, PowerLaw1, PowerLaw2, PolyHigh, PolyReduced };

struct ReconChoice {
  ReconTag tag = ReconTag::Parabola;
  int level = 0;  // number of dropped moments / ignored interior points for PolyReduced
  LocalPolynomial poly;
  PowerLaw law;

  bool is_power_law() const { return tag == ReconTag::PowerLaw1 || tag == ReconTag::PowerLaw2; }
  double at_xi(double xi) const { return is_power_law() ? law.at_xi(xi) : poly.at_xi(xi); }
  double slope_xi(double xi) const { return is_power_law() ? law.slope_xi(xi) : poly.slope_xi(xi); }
};

inline constexpr double kMinPowerExponent = 1.0 / 50.0;
inline constexpr double kMaxPowerExponent = 50.0;
// Relative size below which data differences count as round-off in limiter tests.
inline constexpr double kLimiterRoundoff = 1e-13;

LocalPolynomial parabolic(double q_l, double avg, double q_r, double dx);

// Monotone data, avg strictly between the endpoints. Throws DegenerateData otherwise.
PowerLaw power_law(int which, double q_l, double avg, double q_r, double dx);

bool monotone_data(double q_l, double avg, double q_r);

// Parabola for non-monotone data, otherwise the continuous parabola/power-law
// selection. Exponents are clamped to [1/50, 50] when the average sits on an endpoint.
ReconChoice limited_parabola_or_power(double q_l, double avg, double q_r, double dx);

// Degree xs.size() polynomial through (xs, ys) with mean avg. xs are physical
// offsets from the cell center. Throws SingularAverageConstraint.
LocalPolynomial interpolate_points_with_average(std::span<const double> xs, std::span<const double> ys, double avg,
                                                double dx);
// Same with an explicit auxiliary node (reference coordinate).
LocalPolynomial interpolate_points_with_average(std::span<const double> xs, std::span<const double> ys, double avg,
                                                double dx, double aux_xi);

// Degree k+2 polynomial with endpoint values q_l, q_r and moments 0..k.
LocalPolynomial moment_poly(double q_l, double q_r, std::span<const double> moments, double dx);

// 1: (q_r - q_l) r / dx, slope of form 1 at the right end.
// 2: (q_r - q_l) / (r dx), slope of form 2 at the left end.
// r = (q_r - avg) / (avg - q_l). Throws DegenerateData.
double power_law_derivative(int which, double q_l, double avg, double q_r, double dx);

// Endpoints plus n equidistant interior samples are monotone in index.
bool monotone_on_samples(const LocalPolynomial& poly, int n_samples);
// Endpoints plus n equidistant interior samples lie within [lo, hi].
bool within_range_on_samples(const LocalPolynomial& poly, double lo, double hi, int n_samples);

}  // namespace af
