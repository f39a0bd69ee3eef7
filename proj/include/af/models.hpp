#pragma once

#include <string>

#include "af/small.hpp"

namespace af {

enum class ModelKind { Advection, Burgers, Euler };

// Flux, Jacobian, and eigenstructure of dq/dt + d f(q)/dx = 0.
// Euler states are conserved variables (rho, rho v, e) with e = p/(gamma-1) + rho v^2/2.
struct Eigensystem {
  Mat right;      // columns are right eigenvectors
  Vec lambda;
  Mat right_inv;  // rows are left eigenvectors
};

class Model {
 public:
  static Model advection(double speed);
  static Model burgers();
  static Model euler(double gamma = 1.4);

  ModelKind kind() const { return kind_; }
  int components() const { return kind_ == ModelKind::Euler ? 3 : 1; }
  bool is_scalar() const { return kind_ != ModelKind::Euler; }
  bool is_linear() const { return kind_ == ModelKind::Advection; }
  double advection_speed() const { return speed_; }
  double gamma() const { return gamma_; }
  std::string name() const;

  Vec flux(const Vec& q) const;
  Mat jacobian(const Vec& q) const;
  Eigensystem eig(const Vec& q) const;
  double max_speed(const Vec& q) const;

  // Scalar laws only: f'(q) and f(q).
  double speed(double q) const;
  double flux(double q) const;

  // Throws NonPhysicalState for Euler states with rho or p below the floor.
  void check_admissible(const Vec& q) const;

  Vec conserved_from_primitive(double rho, double v, double p) const;
  double pressure(const Vec& q) const;

 private:
  ModelKind kind_ = ModelKind::Advection;
  double speed_ = 1.0;
  double gamma_ = 1.4;
};

inline constexpr double kAdmissibilityFloor = 1e-12;

struct SplitJacobian {
  Mat plus;
  Mat minus;
};

// A+ = R diag(max(0, lambda)) R^-1, A- = R diag(min(0, lambda)) R^-1.
SplitJacobian eig_split(const Model& model, const Vec& q);

}  // namespace af
