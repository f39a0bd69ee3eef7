#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "af/core.hpp"

namespace af {

// (n0 + n1 * a) / d, kept symbolic in the free parameter a.
struct AffineRational {
  double n0 = 0.0;
  double n1 = 0.0;
  double d = 1.0;

  double eval(double a) const { return (n0 + n1 * a) / d; }
};

enum class Slot { Point, Average };

// One stencil entry relative to the anchor interface I (x_{I+1/2}).
//   Point,   offset j: q at interface I+j (x_{I+1/2+j})
//   Average, offset j: average of cell I+j
struct FdEntry {
  Slot slot;
  int offset;
  AffineRational coeff;
};

class FdTableau {
 public:
  FdTableau(std::string name, int order, std::vector<FdEntry> entries, std::optional<double> parameter);

  const std::string& name() const { return name_; }
  int order() const { return order_; }
  std::optional<double> parameter() const { return param_; }
  bool flipped() const { return flipped_; }
  const std::vector<FdEntry>& entries() const { return entries_; }
  double coeff(const FdEntry& e) const { return e.coeff.eval(param_.value_or(0.0)); }

  // Coefficient attached to a slot/offset, 0 when absent.
  double coeff(Slot slot, int offset) const;

  // Widest point / average offsets referenced, for window sizing.
  int min_offset() const;
  int max_offset() const;

  FdTableau flip() const;

 private:
  std::string name_;
  int order_;
  std::vector<FdEntry> entries_;
  std::optional<double> param_;
  bool flipped_ = false;
};

// Stability-optimal default for tableaus with a free parameter.
std::optional<double> fd_default_parameter(std::string_view name);
const std::vector<std::string>& fd_tableau_names();

// Throws InvalidArgument for unknown names or a parameter on a fixed formula.
// A missing parameter selects the default.
FdTableau fd_tableau(std::string_view name, std::optional<double> parameter = std::nullopt);
FdTableau fd_flip(const FdTableau& t);

// (1/dx) * sum of coefficients times data, periodic; anchor interface index I.
// Uses component c of the state's iface and avg fields.
double fd_apply(const FdTableau& t, const Field& iface, const Field& avg, int c, int anchor, double dx);
Vec fd_apply(const FdTableau& t, const State& state, const Grid& grid, int anchor);

// Moment-difference tableau on one cell.
// Right anchor: derivative at x_{i+1/2} from q_{i-1/2}, moments of cell i, q_{i+1/2}.
// Left anchor:  derivative at x_{i-1/2} from the same data.
enum class Anchor { Right, Left };

struct MdTableau {
  int order = 3;
  Anchor anchor = Anchor::Right;
  double left = 0.0;            // coefficient of q_{i-1/2}
  std::vector<double> moments;  // coefficient of q_i^{(p)}, p = 0..order-3
  double right = 0.0;           // coefficient of q_{i+1/2}
};

MdTableau md_tableau(int order);
MdTableau md_flip(const MdTableau& t);

// (1/dx) (left q_l + sum_p m_p q^(p) + right q_r).
double md_apply(const MdTableau& t, double q_l, const double* moments, double q_r, double dx);

// Largest d such that x^0..x^d are differentiated exactly (1e-10, dx = 1).
int verify_order(const FdTableau& t, int max_degree = 12);
int verify_order(const MdTableau& t, int max_degree = 12);

}  // namespace af
