#include <doctest.h>

#include <cmath>
#include <random>

#include <omp.h>

#include "pmm/error.hpp"
#include "pmm/field.hpp"
#include "pmm/kernels.hpp"
#include "support.hpp"

using namespace pmm;
using testing_support::random_field;

TEST_CASE("dense field construction and access") {
  DenseField f(2, 3, 1.5);
  CHECK(f.rows() == 2);
  CHECK(f.cols() == 3);
  CHECK(f.size() == 6);
  f(1, 2) = 4.0;
  CHECK(f[5] == 4.0);
  CHECK_THROWS_AS(DenseField(2, 2, std::vector<double>{1, 2, 3}), InvalidArgument);
  const DenseField c = DenseField::column({1, 2, 3});
  CHECK(c.shape() == Shape{3, 1});
}

TEST_CASE("field arithmetic rejects shape mismatch") {
  DenseField a(2, 2);
  DenseField b(4, 1);
  CHECK_THROWS_AS(a += b, InvalidArgument);
  CHECK_THROWS_AS(dot(a, b), InvalidArgument);
}

TEST_CASE("dot, norm and lincomb") {
  const DenseField a(1, 3, std::vector<double>{1, 2, 2});
  const DenseField b(1, 3, std::vector<double>{3, 0, -1});
  CHECK(dot(a, b) == doctest::Approx(1.0));
  CHECK(norm(a) == doctest::Approx(3.0));
  CHECK(norm_sq(a) == doctest::Approx(9.0));
  const DenseField c = lincomb(2.0, a, -1.0, b);
  CHECK(c == DenseField(1, 3, std::vector<double>{-1, 4, 5}));
  DenseField y = b;
  axpy(0.5, a, y);
  CHECK(y == DenseField(1, 3, std::vector<double>{3.5, 1, 0}));
}

TEST_CASE("parallel kernels match the serial reference") {
  std::mt19937_64 rng(7);
  for (std::size_t n : {std::size_t{5}, std::size_t{4096}, std::size_t{50000}}) {
    const DenseField x = random_field(n, 1, rng);
    const DenseField y = random_field(n, 1, rng);
    // blocked summation order differs from the sequential one
    const double ref = kernels::serial::dot(x.span(), y.span());
    CHECK(std::fabs(kernels::dot(x.span(), y.span()) - ref) <= 1e-12 * static_cast<double>(n));

    DenseField a = y;
    DenseField b = y;
    kernels::axpy(0.3, x.span(), a.span());
    kernels::serial::axpy(0.3, x.span(), b.span());
    CHECK(a == b);

    DenseField s1(n, 1);
    DenseField s2(n, 1);
    kernels::shrink(x.span(), 0.25, s1.span());
    kernels::serial::shrink(x.span(), 0.25, s2.span());
    CHECK(s1 == s2);
  }
}

TEST_CASE("parallel reductions do not depend on the thread count") {
  std::mt19937_64 rng(8);
  const DenseField x = random_field(300, 300, rng);
  const DenseField y = random_field(300, 300, rng);
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const double one = dot(x, y);
  omp_set_num_threads(4);
  const double four = dot(x, y);
  omp_set_num_threads(saved);
  CHECK(one == four);
}

TEST_CASE("blocked dot product is accurate") {
  DenseField x(100000, 1, 0.1);
  CHECK(dot(x, x) == doctest::Approx(1000.0).epsilon(1e-12));
}
