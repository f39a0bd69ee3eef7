#include "af/stencils.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "af/errors.hpp"

namespace af {

namespace {

using S = Slot;

FdEntry P(int j, double n0, double n1 = 0.0, double d = 1.0) { return {S::Point, j, {n0, n1, d}}; }
FdEntry A(int j, double n0, double n1 = 0.0, double d = 1.0) { return {S::Average, j, {n0, n1, d}}; }

struct Definition {
  int order;
  bool has_param;
  double default_param;
  std::vector<FdEntry> entries;
};

const std::map<std::string, Definition, std::less<>>& definitions() {
  static const std::map<std::string, Definition, std::less<>> defs = {
      {"FD2", {2, true, 1.5, {P(-1, -2, 1), A(0, 2, -2), P(0, 0, 1)}}},
      {"FD3", {3, false, 0.0, {P(-1, 2), A(0, -6), P(0, 4)}}},
      {"FD3A", {3, false, 0.0, {P(-1, 5, 0, 6), A(0, -3), P(0, 4, 0, 3), A(1, 1), P(1, -1, 0, 6)}}},
      {"FD4a",
       {4, true, 1.7723, {P(-1, 2, 1, 4), A(0, -8, -3, 4), P(0, 0, 1), A(1, 8, -3, 4), P(1, -2, 1, 4)}}},
      {"FD4b", {4, true, 1.0, {A(-1, 2, -1, 6), P(-1, -1, 1), A(0, -1, -10, 6), P(0, 0, 1), A(1, 5, -1, 6)}}},
      {"FD4c", {4, true, 3.5, {P(-2, -5, 1), A(-1, 29, -6, 2), P(-1, -16, 4), A(0, 13, -6, 2), P(0, 0, 1)}}},
      {"FD5a",
       {5, true, 1.6,
        {A(-1, 0, -1, 18), P(-1, 1, 1, 2), A(0, -36, -19, 18), P(0, 0, 1), A(1, 18, -5, 9), P(1, -3, 1, 6)}}},
      {"FD5b",
       {5, true, 1.5,
        {P(-2, -3, 1, 3), A(-1, 57, -20, 18), P(-1, -4, 2), A(0, 21, -38, 18), P(0, 0, 1), A(1, 6, -1, 9)}}},
      {"FD6a",
       {6, true, 1.88,
        {A(-1, -1, -1, 36), P(-1, 2, 1, 3), A(0, -81, -29, 36), P(0, 0, 1), A(1, 81, -29, 36), P(1, -2, 1, 3),
         A(2, 1, -1, 36)}}},
      {"FD6b",
       {6, true, 0.25,
        {P(-2, -1, 1, 9), A(-1, 19, -22, 54), P(-1, 0, 1), A(0, -89, -76, 54), P(0, 0, 1), A(1, 50, -11, 27),
         P(1, -4, 1, 9)}}},
      {"FD6c",
       {6, true, 2.3,
        {A(-2, 4, -1, 12), P(-2, -11, 3, 3), A(-1, 302, -87, 36), P(-1, -8, 3), A(0, 86, -87, 36), P(0, 0, 1),
         A(1, 20, -3, 36)}}},
      {"FD7",
       {7, true, 0.68,
        {A(-2, 2, -1, 48), P(-2, -5, 3, 9), A(-1, 586, -393, 432), P(-1, -2, 3, 2), A(0, -494, -717, 432),
         P(0, 0, 1), A(1, 730, -141, 432), P(1, -14, 3, 36)}}},
      {"FD8a",
       {8, true, 4.0 / 3.0,
        {P(-3, -8, 3, 48), A(-2, 196, -75, 288), P(-2, -7, 3, 3), A(-1, 1172, -555, 288), P(-1, -12, 9, 4),
         A(0, -124, -555, 288), P(0, 0, 1), A(1, 436, -75, 288), P(1, -16, 3, 48)}}},
      {"FD8c",
       {8, true, 1.9,
        {P(-2, 1, 1, 36), A(-1, -28, -25, 216), P(-1, 8, 4, 9), A(0, -540, -185, 216), P(0, 0, 1),
         A(1, 540, -185, 216), P(1, -8, 4, 9), A(2, 28, -25, 216), P(2, -1, 1, 36)}}},
  };
  return defs;
}

// Cell average of x^d over [a, b].
double mean_power(int d, double a, double b) {
  return (std::pow(b, d + 1) - std::pow(a, d + 1)) / ((d + 1) * (b - a));
}

}  // namespace

FdTableau::FdTableau(std::string name, int order, std::vector<FdEntry> entries, std::optional<double> parameter)
    : name_(std::move(name)), order_(order), entries_(std::move(entries)), param_(parameter) {}

double FdTableau::coeff(Slot slot, int offset) const {
  for (const auto& e : entries_) {
    if (e.slot == slot && e.offset == offset) return coeff(e);
  }
  return 0.0;
}

int FdTableau::min_offset() const {
  int lo = 0;
  for (const auto& e : entries_) lo = std::min(lo, e.offset);
  return lo;
}

int FdTableau::max_offset() const {
  int hi = 0;
  for (const auto& e : entries_) hi = std::max(hi, e.offset);
  return hi;
}

FdTableau FdTableau::flip() const {
  std::vector<FdEntry> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) {
    const int j = e.slot == Slot::Point ? -e.offset : 1 - e.offset;
    out.push_back({e.slot, j, {-e.coeff.n0, -e.coeff.n1, e.coeff.d}});
  }
  std::sort(out.begin(), out.end(), [](const FdEntry& a, const FdEntry& b) {
    const double xa = a.offset - (a.slot == Slot::Average ? 0.5 : 0.0);
    const double xb = b.offset - (b.slot == Slot::Average ? 0.5 : 0.0);
    return xa < xb;
  });
  FdTableau t(name_, order_, std::move(out), param_);
  t.flipped_ = !flipped_;
  return t;
}

std::optional<double> fd_default_parameter(std::string_view name) {
  const auto& defs = definitions();
  auto it = defs.find(name);
  if (it == defs.end()) throw InvalidArgument("unknown FD tableau '" + std::string(name) + "'");
  if (!it->second.has_param) return std::nullopt;
  return it->second.default_param;
}

const std::vector<std::string>& fd_tableau_names() {
  static const std::vector<std::string> names = {"FD2",  "FD3",  "FD3A", "FD4a", "FD4b", "FD4c", "FD5a",
                                                 "FD5b", "FD6a", "FD6b", "FD6c", "FD7",  "FD8a", "FD8c"};
  return names;
}

FdTableau fd_tableau(std::string_view name, std::optional<double> parameter) {
  const auto& defs = definitions();
  auto it = defs.find(name);
  if (it == defs.end()) throw InvalidArgument("unknown FD tableau '" + std::string(name) + "'");
  const Definition& def = it->second;
  if (!def.has_param && parameter) {
    throw InvalidArgument("tableau " + std::string(name) + " takes no parameter");
  }
  std::optional<double> a;
  if (def.has_param) a = parameter.value_or(def.default_param);
  return FdTableau(std::string(name), def.order, def.entries, a);
}

FdTableau fd_flip(const FdTableau& t) { return t.flip(); }

double fd_apply(const FdTableau& t, const Field& iface, const Field& avg, int c, int anchor, double dx) {
  const int n = iface.size();
  double s = 0.0;
  for (const auto& e : t.entries()) {
    int k = (anchor + e.offset) % n;
    if (k < 0) k += n;
    s += t.coeff(e) * (e.slot == Slot::Point ? iface(c, k) : avg(c, k));
  }
  return s / dx;
}

Vec fd_apply(const FdTableau& t, const State& state, const Grid& grid, int anchor) {
  Vec out(state.components());
  for (int c = 0; c < state.components(); ++c) {
    out[c] = fd_apply(t, state.iface, state.avg(), c, grid.wrap(anchor), grid.dx());
  }
  return out;
}

MdTableau md_tableau(int order) {
  MdTableau t;
  t.order = order;
  t.anchor = Anchor::Right;
  switch (order) {
    case 3:
      t.left = 2.0;
      t.moments = {-6.0};
      t.right = 4.0;
      break;
    case 5:
      t.left = 4.0;
      t.moments = {15.0, -15.0, -35.0};
      t.right = 16.0;
      break;
    case 7:
      t.left = 6.0;
      t.moments = {-105.0 / 4.0, 105.0 / 2.0, 315.0 / 2.0, -315.0 / 4.0, -693.0 / 4.0};
      t.right = 36.0;
      break;
    default:
      throw InvalidArgument("MD order must be 3, 5 or 7");
  }
  return t;
}

MdTableau md_flip(const MdTableau& t) {
  MdTableau f = t;
  f.anchor = t.anchor == Anchor::Right ? Anchor::Left : Anchor::Right;
  f.left = -t.right;
  f.right = -t.left;
  for (size_t p = 0; p < t.moments.size(); ++p) {
    f.moments[p] = (p % 2 == 0 ? -1.0 : 1.0) * t.moments[p];
  }
  return f;
}

double md_apply(const MdTableau& t, double q_l, const double* moments, double q_r, double dx) {
  double s = t.left * q_l;
  for (size_t p = 0; p < t.moments.size(); ++p) s += t.moments[p] * moments[p];
  s += t.right * q_r;
  return s / dx;
}

int verify_order(const FdTableau& t, int max_degree) {
  // dx = 1, anchor interface at x = 0, cell I+j covers [j-1, j].
  int exact = -1;
  for (int d = 0; d <= max_degree; ++d) {
    double s = 0.0, scale = 1.0;
    for (const auto& e : t.entries()) {
      const double v = e.slot == Slot::Point ? std::pow(static_cast<double>(e.offset), d)
                                             : mean_power(d, e.offset - 1.0, e.offset);
      s += t.coeff(e) * v;
      scale = std::max(scale, std::abs(t.coeff(e) * v));
    }
    const double target = d == 1 ? 1.0 : 0.0;
    if (std::abs(s - target) > 1e-10 * scale) break;
    exact = d;
  }
  return exact;
}

int verify_order(const MdTableau& t, int max_degree) {
  // dx = 1, cell [-1/2, 1/2].
  int exact = -1;
  const double xa = t.anchor == Anchor::Right ? 0.5 : -0.5;
  for (int d = 0; d <= max_degree; ++d) {
    double s = t.left * std::pow(-0.5, d) + t.right * std::pow(0.5, d);
    double scale = std::max({1.0, std::abs(t.left), std::abs(t.right)});
    for (size_t p = 0; p < t.moments.size(); ++p) {
      const int e = static_cast<int>(p) + d;
      const double integral = e % 2 == 0 ? std::pow(0.5, e) / (e + 1) : 0.0;
      const double m = (p + 1) * std::ldexp(1.0, static_cast<int>(p)) * integral;
      s += t.moments[p] * m;
      scale = std::max(scale, std::abs(t.moments[p] * m));
    }
    const double target = d == 0 ? 0.0 : d * std::pow(xa, d - 1);
    if (std::abs(s - target) > 1e-10 * scale) break;
    exact = d;
  }
  return exact;
}

}  // namespace af
