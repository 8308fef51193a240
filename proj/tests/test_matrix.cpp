#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "safesets/matrix.hpp"
#include "support/oracles.hpp"

using namespace safesets;

TEST_CASE("construction validates shape and finiteness") {
  CHECK_THROWS_AS(Matrix(0, 3), std::invalid_argument);
  CHECK_THROWS_AS(Matrix(2, 2, Vector{1, 2, 3}), std::invalid_argument);
  CHECK_THROWS_AS(Matrix(1, 1, Vector{std::nan("")}), std::invalid_argument);
  CHECK_THROWS_AS((Matrix{{1.0, 2.0}, {3.0}}), std::invalid_argument);
}

TEST_CASE("identity times M is M") {
  const Matrix m{{1.5, -2.0}, {0.25, 4.0}};
  CHECK(Matrix::identity(2) * m == m);
}

TEST_CASE("discrete cart matrix times a position state") {
  const Matrix a{{1.0, 0.002}, {0.0, 0.9856}};
  const Vector x{0.4, 0.0};
  const Vector y = a.apply(x);
  CHECK(y[0] == 0.4);
  CHECK(y[1] == 0.0);
}

TEST_CASE("product matches the triple-loop oracle") {
  oracles::Rng rng(42);
  for (int rep = 0; rep < 20; ++rep) {
    const Matrix a = oracles::random_matrix(rng, 4, 4);
    const Matrix b = oracles::random_matrix(rng, 4, 4);
    const Matrix got = mat_mul(a, b);
    const Matrix want = oracles::naive_mat_mul(a, b);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        CHECK(got(i, j) == doctest::Approx(want(i, j)).epsilon(1e-12));
  }
}

TEST_CASE("product rejects mismatched inner dimensions") {
  CHECK_THROWS_AS(mat_mul(Matrix(2, 3), Matrix(2, 3)), std::invalid_argument);
}

TEST_CASE("char poly of the zero matrix") {
  const std::vector<double> c = char_poly_coeffs(Matrix(2, 2));
  REQUIRE(c.size() == 3);
  CHECK(c[0] == 1.0);
  CHECK(c[1] == 0.0);
  CHECK(c[2] == 0.0);
}

TEST_CASE("char poly of the discrete cart matrix") {
  const Matrix a{{1.0, 0.002}, {0.0, 0.9856}};
  const std::vector<double> c = char_poly_coeffs(a);
  REQUIRE(c.size() == 3);
  CHECK(c[0] == 1.0);
  CHECK(c[1] == doctest::Approx(-1.9856).epsilon(1e-12));
  CHECK(c[2] == doctest::Approx(0.9856).epsilon(1e-12));
}

TEST_CASE("char poly matches the determinant-interpolation oracle") {
  oracles::Rng rng(7);
  for (int rep = 0; rep < 20; ++rep) {
    const Matrix a = oracles::random_matrix(rng, 3, 3);
    const auto got = char_poly_coeffs(a);
    const auto want = oracles::charpoly_by_interpolation(a);
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i)
      CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-9));
  }
}

TEST_CASE("char poly rejects non-square and oversized input") {
  CHECK_THROWS_AS(char_poly_coeffs(Matrix(2, 3)), std::invalid_argument);
  CHECK_THROWS_AS(char_poly_coeffs(Matrix(9, 9)), std::invalid_argument);
}

TEST_CASE("roots reproduce a known spectrum") {
  // Build P D P^{-1} with a prescribed spectrum and recover it.
  oracles::Rng rng(99);
  const std::vector<double> spectrum{0.9, -0.5, 0.2};
  for (int rep = 0; rep < 10; ++rep) {
    Matrix p = oracles::random_matrix(rng, 3, 3);
    while (std::abs(oracles::naive_det(p)) < 0.1) p = oracles::random_matrix(rng, 3, 3);
    Matrix d(3, 3);
    for (std::size_t i = 0; i < 3; ++i) d(i, i) = spectrum[i];
    const Matrix a = p * d * inverse(p);
    auto roots = eigenvalues(a);
    std::vector<double> mods;
    for (auto& z : roots) {
      CHECK(std::abs(z.imag()) < 1e-6);
      mods.push_back(z.real());
    }
    std::sort(mods.begin(), mods.end());
    std::vector<double> want = spectrum;
    std::sort(want.begin(), want.end());
    for (std::size_t i = 0; i < 3; ++i)
      CHECK(mods[i] == doctest::Approx(want[i]).epsilon(1e-6));
  }
}

TEST_CASE("linear solve round trip") {
  oracles::Rng rng(3);
  const Matrix a = oracles::random_matrix(rng, 4, 4);
  const Vector x{1.0, -2.0, 0.5, 3.0};
  const Vector b = a.apply(x);
  const Vector got = solve_linear(a, b);
  for (std::size_t i = 0; i < 4; ++i) CHECK(got[i] == doctest::Approx(x[i]).epsilon(1e-9));
  CHECK_THROWS_AS(solve_linear(Matrix(2, 2), Vector{1.0, 1.0}), std::domain_error);
}
