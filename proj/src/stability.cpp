#include "af/stability.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <limits>
#include <thread>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "af/errors.hpp"
#include "af/evolution.hpp"
#include "af/reconstruction.hpp"
#include "af/stencils.hpp"

namespace af {

ComplexPoly::ComplexPoly(std::vector<Complex> coeffs) : a_(std::move(coeffs)) {
  double big = 0.0;
  for (const Complex& c : a_) big = std::max(big, std::abs(c));
  while (!a_.empty() && std::abs(a_.back()) <= kTrimTolerance * big) a_.pop_back();
  if (big == 0.0) a_.clear();
}

Complex ComplexPoly::operator()(Complex z) const {
  Complex s = 0.0;
  for (auto it = a_.rbegin(); it != a_.rend(); ++it) s = s * z + *it;
  return s;
}

ComplexPoly ComplexPoly::reflected() const {
  std::vector<Complex> b(a_.size());
  for (size_t j = 0; j < a_.size(); ++j) b[j] = std::conj(a_[a_.size() - 1 - j]);
  return ComplexPoly(std::move(b));
}

ComplexPoly ComplexPoly::derivative() const {
  if (a_.size() <= 1) return ComplexPoly();
  std::vector<Complex> b(a_.size() - 1);
  for (size_t j = 1; j < a_.size(); ++j) b[j - 1] = static_cast<double>(j) * a_[j];
  return ComplexPoly(std::move(b));
}

ComplexPoly ComplexPoly::scaled_argument(double s) const {
  std::vector<Complex> b = a_;
  double p = 1.0;
  for (Complex& c : b) {
    c *= p;
    p *= s;
  }
  return ComplexPoly(std::move(b));
}

namespace {

// The recursion treats the double coefficients as exact. Margins shrink
// multiplicatively from one level to the next, so root clusters near the
// circle need far more than double precision: quad settles almost every case,
// and verdicts resting on a margin inside its rounding budget are recomputed
// with 100 decimal digits.
#if defined(__x86_64__) || defined(__i386__)
using Quad = __float128;
constexpr double kQuadEps = 1.93e-34;
#else
using Quad = long double;
constexpr double kQuadEps = std::numeric_limits<long double>::epsilon();
#endif
using Wide = boost::multiprecision::cpp_bin_float_100;

template <class R>
struct Cx {
  R re, im;
};

template <class R>
Cx<R> operator*(const Cx<R>& a, const Cx<R>& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
template <class R>
Cx<R> operator+(const Cx<R>& a, const Cx<R>& b) {
  return {a.re + b.re, a.im + b.im};
}
template <class R>
Cx<R> operator-(const Cx<R>& a, const Cx<R>& b) {
  return {a.re - b.re, a.im - b.im};
}
template <class R>
Cx<R> conj(const Cx<R>& a) {
  return {a.re, -a.im};
}
template <class R>
R norm2(const Cx<R>& a) {
  return a.re * a.re + a.im * a.im;
}
template <class R>
R mag(const R& x) {
  return x < 0 ? R(-x) : x;
}
template <class R>
R size_of(const Cx<R>& a) {
  return std::max(mag(a.re), mag(a.im));
}

template <class R>
struct Precision;
#if defined(__x86_64__) || defined(__i386__)
template <>
struct Precision<long double> {
  static long double eps() { return std::numeric_limits<long double>::epsilon(); }
  static constexpr bool final = false;
};
#endif
template <>
struct Precision<Quad> {
  static Quad eps() { return Quad(kQuadEps); }
  static constexpr bool final = false;
};
template <>
struct Precision<Wide> {
  static Wide eps() { return Wide("1e-99"); }
  static constexpr bool final = true;
};

// amp bounds the growth of relative rounding errors through earlier levels.
template <class R>
bool inside_t(std::vector<Cx<R>> a, R amp, bool& doubtful) {
  while (!a.empty() && a.back().re == 0 && a.back().im == 0) a.pop_back();
  R big = 0;
  for (const auto& c : a) big = std::max(big, size_of(c));
  for (auto& c : a) c = {c.re / big, c.im / big};
  const int n = static_cast<int>(a.size()) - 1;
  if (n <= 0) return true;

  const Cx<R> fs0 = conj(a[n]), f0 = a[0];
  std::vector<Cx<R>> b(n);
  R size = 0;
  for (int j = 1; j <= n; ++j) {
    b[j - 1] = fs0 * a[j] - f0 * conj(a[n - j]);
    size = std::max(size, size_of(b[j - 1]));
  }
  const R tol = R(64 * (n + 1)) * Precision<R>::eps() * amp;
  if (size <= tol) {
    if (!Precision<R>::final) {
      doubtful = true;
      return false;
    }
    std::vector<Cx<R>> d(n);
    for (int j = 1; j <= n; ++j) d[j - 1] = {a[j].re * j, a[j].im * j};
    return inside_t(std::move(d), amp, doubtful);
  }
  const R diff = norm2(fs0) - norm2(f0);
  if (mag(diff) <= tol) {
    if (!Precision<R>::final) doubtful = true;
    return false;
  }
  if (diff < 0) return false;
  return inside_t(std::move(b), R(amp / size), doubtful);
}

template <class R>
std::vector<Cx<R>> char_poly_t(const CMatrix& m) {
  const int n = static_cast<int>(m.rows());
  auto idx = [n](int r, int c) { return r * n + c; };
  std::vector<Cx<R>> a(n * n), mk(n * n, Cx<R>{0, 0}), tmp(n * n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) a[idx(r, c)] = {R(m(r, c).real()), R(m(r, c).imag())};
  }
  auto mul = [&](const std::vector<Cx<R>>& x, const std::vector<Cx<R>>& y, std::vector<Cx<R>>& out) {
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) {
        Cx<R> s{0, 0};
        for (int k = 0; k < n; ++k) s = s + x[idx(r, k)] * y[idx(k, c)];
        out[idx(r, c)] = s;
      }
    }
  };
  std::vector<Cx<R>> coef(n + 1, Cx<R>{0, 0});
  coef[n] = {1, 0};
  for (int k = 1; k <= n; ++k) {
    mul(a, mk, tmp);
    for (int r = 0; r < n; ++r) tmp[idx(r, r)] = tmp[idx(r, r)] + coef[n - k + 1];
    mk = tmp;
    mul(a, mk, tmp);
    Cx<R> tr{0, 0};
    for (int r = 0; r < n; ++r) tr = tr + tmp[idx(r, r)];
    coef[n - k] = {-tr.re / k, -tr.im / k};
  }
  return coef;
}

template <class R>
std::vector<Cx<R>> shrunk(std::vector<Cx<R>> f, double shrink) {
  R p = 1;
  const R s = R(1) + R(shrink);
  for (auto& c : f) {
    c = {c.re * p, c.im * p};
    p *= s;
  }
  return f;
}

template <class R>
std::vector<Cx<R>> lift(const ComplexPoly& f) {
  std::vector<Cx<R>> a;
  for (const Complex& c : f.coeffs()) a.push_back({R(c.real()), R(c.imag())});
  return a;
}

bool inside(const ComplexPoly& f) {
  bool doubtful = false;
#if defined(__x86_64__) || defined(__i386__)
  const bool fast = inside_t<long double>(lift<long double>(f), 1.0L, doubtful);
  if (!doubtful) return fast;
  doubtful = false;
#endif
  const bool v = inside_t<Quad>(lift<Quad>(f), Quad(1), doubtful);
  if (!doubtful) return v;
  return inside_t<Wide>(lift<Wide>(f), Wide(1), doubtful);
}

bool matrix_stable(const CMatrix& m, double shrink) {
  if (m.rows() > kMaxSymbolSize) throw InvalidArgument("matrix too large for the characteristic polynomial");
  bool doubtful = false;
#if defined(__x86_64__) || defined(__i386__)
  const bool fast = inside_t<long double>(shrunk(char_poly_t<long double>(m), shrink), 1.0L, doubtful);
  if (!doubtful) return fast;
  doubtful = false;
#endif
  const bool v = inside_t<Quad>(shrunk(char_poly_t<Quad>(m), shrink), Quad(1), doubtful);
  if (!doubtful) return v;
  return inside_t<Wide>(shrunk(char_poly_t<Wide>(m), shrink), Wide(1), doubtful);
}

}  // namespace

DiscVerdict schur_inside_unit_disc(const ComplexPoly& f) {
  if (f.is_zero()) throw ZeroPolynomial("zero polynomial has no defined zero set");
  return inside(f) ? DiscVerdict::Inside : DiscVerdict::BoundaryOrOutside;
}

bool von_neumann_stable(const ComplexPoly& f, double shrink) {
  return schur_inside_unit_disc(f.scaled_argument(1.0 + shrink)) == DiscVerdict::Inside;
}

ComplexPoly char_poly(const CMatrix& m) {
  const int n = static_cast<int>(m.rows());
  if (m.cols() != n) throw InvalidArgument("char_poly needs a square matrix");
  if (n > kMaxSymbolSize) throw InvalidArgument("matrix too large for the characteristic polynomial");
  std::vector<Complex> c(n + 1);
  c[n] = 1.0;
  const CMatrix id = CMatrix::Identity(n, n);
  CMatrix mk = CMatrix::Zero(n, n);
  for (int k = 1; k <= n; ++k) {
    mk = m * mk + c[n - k + 1] * id;
    c[n - k] = -(m * mk).trace() / static_cast<double>(k);
  }
  return ComplexPoly(std::move(c));
}

std::vector<double> rk_polynomial(RkScheme scheme) {
  if (scheme == RkScheme::Ssp3) return {1.0, 1.0, 0.5, 1.0 / 6.0};
  // gamma_j = b^T A^(j-1) 1 for the six-stage tableau.
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(6, 6);
  a(1, 0) = 0.25;
  a(2, 0) = 0.125, a(2, 1) = 0.125;
  a(3, 1) = -0.5, a(3, 2) = 1.0;
  a(4, 0) = 3.0 / 16.0, a(4, 3) = 9.0 / 16.0;
  a(5, 0) = -3.0 / 7.0, a(5, 1) = 2.0 / 7.0, a(5, 2) = 12.0 / 7.0, a(5, 3) = -12.0 / 7.0, a(5, 4) = 8.0 / 7.0;
  Eigen::VectorXd b(6);
  b << 7.0, 0.0, 32.0, 12.0, 32.0, 7.0;
  b /= 90.0;
  std::vector<double> g{1.0};
  Eigen::VectorXd v = Eigen::VectorXd::Ones(6);
  for (int j = 1; j <= 6; ++j) {
    g.push_back(b.dot(v));
    v = a * v;
  }
  return g;
}

int symbol_size(const VariantConfig& config) {
  switch (config.kind) {
    case VariantKind::A: return 2;
    case VariantKind::B: return 2 + static_cast<int>(config.xi.size());
    case VariantKind::C: return 1 + config.moments();
  }
  return 0;
}

CMatrix semidiscrete_symbol(const VariantConfig& config, double K) {
  const Complex t = std::polar(1.0, K);
  const int n = symbol_size(config);
  CMatrix L = CMatrix::Zero(n, n);
  if (config.kind == VariantKind::A) {
    // Q = (q_{i+1/2}, avg_i); positive speed uses the anchored tableau.
    const FdTableau tab = fd_tableau(config.fd_name, config.fd_param);
    for (const auto& e : tab.entries()) {
      L(0, e.slot == Slot::Point ? 0 : 1) -= tab.coeff(e) * std::pow(t, e.offset);
    }
    L(1, 0) = -(1.0 - 1.0 / t);
    return L;
  }
  if (config.kind == VariantKind::C) {
    // Q = (q_{i+1/2}, q_i^(0..k)).
    const MdTableau md = md_tableau(config.md_order);
    L(0, 0) = -(md.right + md.left / t);
    for (size_t p = 0; p < md.moments.size(); ++p) L(0, 1 + p) = -md.moments[p];
    for (int p = 0; p < n - 1; ++p) {
      const double sgn = p % 2 == 0 ? 1.0 : -1.0;
      L(1 + p, 0) = -static_cast<double>(p + 1) * (1.0 - sgn / t);
      if (p > 0) L(1 + p, p) += 2.0 * (p + 1);
    }
    return L;
  }
  throw InvalidArgument("variant B has no semidiscrete symbol");
}

namespace {

// Variant B update as a polynomial in s = 1/t with real matrix coefficients;
// routing a foot into cell i-1 multiplies by s.
std::vector<Eigen::MatrixXd> variant_b_parts(const VariantConfig& config, double nu) {
  if (!(nu > 0.0 && nu <= 1.0)) throw InvalidArgument("variant B symbol needs 0 < nu <= 1");
  constexpr int kPowers = 4;
  const int k = static_cast<int>(config.xi.size());
  const int n = 2 + k;

  std::vector<double> xs{-0.5};
  for (double x : config.xi) xs.push_back(x);
  xs.push_back(0.5);
  std::vector<LocalPolynomial> basis;
  std::vector<double> unit(xs.size());
  for (size_t j = 0; j <= xs.size(); ++j) {
    std::fill(unit.begin(), unit.end(), 0.0);
    if (j < xs.size()) unit[j] = 1.0;
    basis.push_back(interpolate_points_with_average(xs, unit, j == xs.size() ? 1.0 : 0.0, 1.0));
  }
  // Data slot j of cell i is Q entry slot_col[j] times s^slot_pow[j], Q = (q_{i+1/2}, avg_i, q_{i,1..k}).
  std::vector<int> slot_col{0}, slot_pow{1};
  for (int j = 0; j < k; ++j) slot_col.push_back(2 + j), slot_pow.push_back(0);
  slot_col.push_back(0), slot_pow.push_back(0);
  slot_col.push_back(1), slot_pow.push_back(0);

  using Row = std::vector<Eigen::RowVectorXd>;
  auto zero_row = [&] { return Row(kPowers, Eigen::RowVectorXd::Zero(n)); };
  auto recon = [&](double xi) {
    int shift = 0;
    if (xi < -0.5) {
      xi += 1.0;
      shift = 1;
    }
    Row row = zero_row();
    for (size_t j = 0; j < basis.size(); ++j) row[slot_pow[j] + shift](slot_col[j]) += basis[j].at_xi(xi);
    return row;
  };

  const QuadratureRule rule = config.equidistant_quad ? equidistant_rule(config.quad_m) : lobatto_rule(config.quad_m);
  std::vector<Eigen::MatrixXd> parts(kPowers, Eigen::MatrixXd::Zero(n, n));
  auto put = [&](int r, const Row& row) {
    for (int p = 0; p < kPowers; ++p) parts[p].row(r) += row[p];
  };
  put(0, recon(0.5 - nu));
  Row flux = zero_row();
  for (int l = 0; l < rule.size(); ++l) {
    const Row v = recon(0.5 - nu * rule.nodes[l]);
    for (int p = 0; p < kPowers; ++p) flux[p] += rule.weights[l] * v[p];
  }
  // avg - nu (1 - s) flux
  Row avg_row = zero_row();
  avg_row[0](1) = 1.0;
  for (int p = 0; p < kPowers; ++p) {
    avg_row[p] -= nu * flux[p];
    if (p + 1 < kPowers) avg_row[p + 1] += nu * flux[p];
  }
  put(1, avg_row);
  for (int j = 0; j < k; ++j) put(2 + j, recon(config.xi[j] - nu));
  return parts;
}

// Evaluates the update matrix of one spec at many wave numbers.
class UpdateBuilder {
 public:
  explicit UpdateBuilder(const SymbolSpec& spec) : spec_(spec) {
    if (spec.config.kind == VariantKind::B) {
      parts_ = variant_b_parts(spec.config, spec.nu);
    } else {
      rk_ = rk_polynomial(spec.config.rk);
    }
  }

  CMatrix operator()(double K) const {
    if (spec_.config.kind == VariantKind::B) {
      const Complex s = std::polar(1.0, -K);
      CMatrix out = parts_.back().cast<Complex>();
      for (int p = static_cast<int>(parts_.size()) - 2; p >= 0; --p) out = (s * out).eval() + parts_[p].cast<Complex>();
      return out;
    }
    const CMatrix z = spec_.nu * semidiscrete_symbol(spec_.config, K);
    const int n = static_cast<int>(z.rows());
    CMatrix power = CMatrix::Identity(n, n);
    CMatrix out = rk_[0] * power;
    for (size_t j = 1; j < rk_.size(); ++j) {
      power = power * z;
      out += rk_[j] * power;
    }
    return out;
  }

 private:
  SymbolSpec spec_;
  std::vector<Eigen::MatrixXd> parts_;
  std::vector<double> rk_;
};

}  // namespace

CMatrix build_update_matrix(const SymbolSpec& spec, double K) { return UpdateBuilder(spec)(K); }

std::vector<double> k_samples_grid(int k_samples) {
  std::vector<double> ks(k_samples);
  for (int j = 0; j < k_samples; ++j) {
    ks[j] = k_samples == 1 ? 0.0 : std::numbers::pi * j / (k_samples - 1);
  }
  return ks;
}

bool stable(const SymbolSpec& spec, int k_samples) {
  const UpdateBuilder build(spec);
  for (double K : k_samples_grid(k_samples)) {
    if (!matrix_stable(build(K), kShrinkEpsilon)) return false;
  }
  return true;
}

double max_growth(const SymbolSpec& spec, int k_samples) {
  const UpdateBuilder build(spec);
  double g = 0.0;
  for (double K : k_samples_grid(k_samples)) {
    const Eigen::ComplexEigenSolver<CMatrix> es(build(K), false);
    g = std::max(g, es.eigenvalues().cwiseAbs().maxCoeff());
  }
  return g - 1.0;
}

std::vector<double> nu_grid(double nu_max, double step) {
  std::vector<double> nus;
  const int count = static_cast<int>(std::floor(nu_max / step + 1e-9));
  for (int j = 1; j <= count; ++j) nus.push_back(j * step);
  return nus;
}

double cfl_max_from_row(const std::vector<double>& nus, const std::uint8_t* row) {
  double best = 0.0;
  for (size_t j = 0; j < nus.size(); ++j) {
    if (!row[j]) break;
    best = nus[j];
  }
  return best;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn, unsigned threads) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n && !failed; i = next++) {
        try {
          fn(i);
        } catch (...) {
          if (!failed.exchange(true)) error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

StabilityMap scan_region(const Family& family, const std::vector<double>& params, const std::vector<double>& nus,
                         int k_samples, unsigned threads) {
  if (params.empty() || nus.empty()) throw InvalidArgument("empty scan range");
  StabilityMap map{params, nus, std::vector<std::uint8_t>(params.size() * nus.size()), {}};
  std::vector<VariantConfig> configs;
  for (double p : params) configs.push_back(family(p));
  parallel_for(map.stable.size(), [&](std::size_t idx) {
    const std::size_t p = idx / nus.size(), j = idx % nus.size();
    map.stable[idx] = stable({configs[p], nus[j]}, k_samples) ? 1 : 0;
  }, threads);
  for (std::size_t p = 0; p < params.size(); ++p) {
    map.cfl_max.push_back(cfl_max_from_row(nus, map.stable.data() + p * nus.size()));
  }
  return map;
}

double cfl_max(const VariantConfig& config, double nu_max, double nu_step, int k_samples) {
  double best = 0.0;
  for (double nu : nu_grid(nu_max, nu_step)) {
    if (!stable({config, nu}, k_samples)) break;
    best = nu;
  }
  return best;
}

}  // namespace af
