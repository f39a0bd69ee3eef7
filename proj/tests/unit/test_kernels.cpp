#include <doctest.h>

#include <cstring>
#include <random>
#include <vector>

#include "af/kernels.hpp"

using namespace af::kernels;

namespace {

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

std::vector<double> random_vector(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

}  // namespace

TEST_CASE("instruction-set kernels match the scalar reference bit for bit") {
  const Table& ref = scalar_table();
  CHECK(table_for(Isa::Scalar) == &ref);
  CHECK(table_for(active_isa()) == &active());
  std::mt19937_64 rng(2024);
  for (Isa isa : {Isa::Avx2, Isa::Neon}) {
    const Table* t = table_for(isa);
    if (!t) continue;
    CAPTURE(isa_name(isa));
    for (int n : {1, 2, 3, 4, 5, 7, 8, 9, 16, 33, 100, 1001}) {
      CAPTURE(n);
      const auto x = random_vector(rng, n), y = random_vector(rng, n), z = random_vector(rng, n);

      std::vector<double> a(n), b(n);
      ref.axpby(a.data(), 0.3, x.data(), -1.7, y.data(), n);
      t->axpby(b.data(), 0.3, x.data(), -1.7, y.data(), n);
      CHECK(bitwise_equal(a, b));

      a = y, b = y;
      ref.axpy(a.data(), 2.25, x.data(), n);
      t->axpy(b.data(), 2.25, x.data(), n);
      CHECK(bitwise_equal(a, b));

      ref.flux_difference(a.data(), x.data(), n, 0.013);
      t->flux_difference(b.data(), x.data(), n, 0.013);
      CHECK(bitwise_equal(a, b));

      const Term terms[] = {{x.data(), -3, 0.25}, {y.data(), 0, -1.5}, {z.data(), 2, 0.7},
                            {x.data(), 1, 1.0 / 3.0}, {y.data(), -1, -0.05}};
      ref.stencil_sweep(a.data(), terms, 5, n, 0.01);
      t->stencil_sweep(b.data(), terms, 5, n, 0.01);
      CHECK(bitwise_equal(a, b));
    }
  }
}

TEST_CASE("scalar kernels") {
  const std::vector<double> f{1.0, 4.0, 9.0};
  std::vector<double> out(3);
  scalar_table().flux_difference(out.data(), f.data(), 3, 0.5);
  CHECK(out[0] == doctest::Approx(16.0));
  CHECK(out[1] == doctest::Approx(-6.0));
  CHECK(out[2] == doctest::Approx(-10.0));
  const Term terms[] = {{f.data(), 1, 1.0}, {f.data(), -1, -1.0}};
  scalar_table().stencil_sweep(out.data(), terms, 2, 3, 2.0);
  CHECK(out[0] == doctest::Approx((4.0 - 9.0) / 2.0));
  CHECK(out[2] == doctest::Approx((1.0 - 4.0) / 2.0));
}
