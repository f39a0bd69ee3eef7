#include "af/models.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "af/errors.hpp"

namespace af {

Model Model::advection(double speed) {
  Model m;
  m.kind_ = ModelKind::Advection;
  m.speed_ = speed;
  return m;
}

Model Model::burgers() {
  Model m;
  m.kind_ = ModelKind::Burgers;
  return m;
}

Model Model::euler(double gamma) {
  if (!(gamma > 1.0)) throw InvalidArgument("euler: gamma must exceed 1");
  Model m;
  m.kind_ = ModelKind::Euler;
  m.gamma_ = gamma;
  return m;
}

std::string Model::name() const {
  std::ostringstream os;
  switch (kind_) {
    case ModelKind::Advection: os << "advection(c=" << speed_ << ")"; break;
    case ModelKind::Burgers: os << "burgers"; break;
    case ModelKind::Euler: os << "euler(gamma=" << gamma_ << ")"; break;
  }
  return os.str();
}

double Model::speed(double q) const {
  return kind_ == ModelKind::Advection ? speed_ : q;
}

double Model::flux(double q) const {
  return kind_ == ModelKind::Advection ? speed_ * q : 0.5 * q * q;
}

double Model::pressure(const Vec& q) const {
  const double rho = q[0];
  const double v = q[1] / rho;
  return (gamma_ - 1.0) * (q[2] - 0.5 * rho * v * v);
}

Vec Model::conserved_from_primitive(double rho, double v, double p) const {
  return Vec{rho, rho * v, p / (gamma_ - 1.0) + 0.5 * rho * v * v};
}

void Model::check_admissible(const Vec& q) const {
  if (kind_ != ModelKind::Euler) {
    if (!std::isfinite(q[0])) throw NonPhysicalState("non-finite state value");
    return;
  }
  const double rho = q[0];
  if (!(rho > kAdmissibilityFloor)) {
    throw NonPhysicalState("density " + std::to_string(rho) + " below floor");
  }
  const double p = pressure(q);
  if (!(p > kAdmissibilityFloor)) {
    throw NonPhysicalState("pressure " + std::to_string(p) + " below floor");
  }
}

Vec Model::flux(const Vec& q) const {
  if (kind_ != ModelKind::Euler) return Vec{flux(q[0])};
  check_admissible(q);
  const double rho = q[0];
  const double v = q[1] / rho;
  const double p = pressure(q);
  return Vec{rho * v, rho * v * v + p, v * (q[2] + p)};
}

Mat Model::jacobian(const Vec& q) const {
  if (kind_ != ModelKind::Euler) {
    Mat j(1);
    j(0, 0) = speed(q[0]);
    return j;
  }
  check_admissible(q);
  const double g = gamma_;
  const double rho = q[0];
  const double v = q[1] / rho;
  const double h = (q[2] + pressure(q)) / rho;  // total enthalpy
  Mat j(3);
  j(0, 0) = 0.0;
  j(0, 1) = 1.0;
  j(0, 2) = 0.0;
  j(1, 0) = 0.5 * (g - 3.0) * v * v;
  j(1, 1) = (3.0 - g) * v;
  j(1, 2) = g - 1.0;
  j(2, 0) = v * (0.5 * (g - 1.0) * v * v - h);
  j(2, 1) = h - (g - 1.0) * v * v;
  j(2, 2) = g * v;
  return j;
}

Eigensystem Model::eig(const Vec& q) const {
  if (kind_ != ModelKind::Euler) {
    return {Mat::identity(1), Vec{speed(q[0])}, Mat::identity(1)};
  }
  check_admissible(q);
  const double g = gamma_;
  const double rho = q[0];
  const double v = q[1] / rho;
  const double p = pressure(q);
  const double c = std::sqrt(g * p / rho);
  const double h = (q[2] + p) / rho;

  Eigensystem es;
  es.lambda = Vec{v - c, v, v + c};
  es.right = Mat(3);
  es.right(0, 0) = 1.0;
  es.right(0, 1) = 1.0;
  es.right(0, 2) = 1.0;
  es.right(1, 0) = v - c;
  es.right(1, 1) = v;
  es.right(1, 2) = v + c;
  es.right(2, 0) = h - v * c;
  es.right(2, 1) = 0.5 * v * v;
  es.right(2, 2) = h + v * c;

  const double b1 = (g - 1.0) / (c * c);
  const double b2 = 0.5 * v * v * b1;
  es.right_inv = Mat(3);
  es.right_inv(0, 0) = 0.5 * (b2 + v / c);
  es.right_inv(0, 1) = -0.5 * (b1 * v + 1.0 / c);
  es.right_inv(0, 2) = 0.5 * b1;
  es.right_inv(1, 0) = 1.0 - b2;
  es.right_inv(1, 1) = b1 * v;
  es.right_inv(1, 2) = -b1;
  es.right_inv(2, 0) = 0.5 * (b2 - v / c);
  es.right_inv(2, 1) = -0.5 * (b1 * v - 1.0 / c);
  es.right_inv(2, 2) = 0.5 * b1;
  return es;
}

double Model::max_speed(const Vec& q) const {
  if (kind_ != ModelKind::Euler) return std::abs(speed(q[0]));
  check_admissible(q);
  const double rho = q[0];
  const double v = q[1] / rho;
  const double c = std::sqrt(gamma_ * pressure(q) / rho);
  return std::abs(v) + c;
}

SplitJacobian eig_split(const Model& model, const Vec& q) {
  if (model.is_scalar()) {
    const double s = model.speed(q[0]);
    Mat plus(1), minus(1);
    plus(0, 0) = std::max(0.0, s);
    minus(0, 0) = std::min(0.0, s);
    return {plus, minus};
  }
  const Eigensystem es = model.eig(q);
  const int m = es.lambda.size();
  Vec lp(m), lm(m);
  for (int k = 0; k < m; ++k) {
    lp[k] = std::max(0.0, es.lambda[k]);
    lm[k] = std::min(0.0, es.lambda[k]);
  }
  return {es.right * Mat::diagonal(lp) * es.right_inv,
          es.right * Mat::diagonal(lm) * es.right_inv};
}

}  // namespace af
