#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace safesets {

using Vector = std::vector<double>;

// Dense row-major real matrix. Dimensions and entry finiteness are validated
// on construction; instances are immutable in practice (ops return copies).
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::size_t rows, std::size_t cols, Vector entries);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix transpose() const;
  Vector row(std::size_t i) const;
  Vector apply(std::span<const double> x) const;  // A x
  double trace() const;
  double inf_norm() const;  // max absolute row sum

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(double s);

  bool operator==(const Matrix& other) const = default;

 private:
  void validate() const;

  std::size_t rows_;
  std::size_t cols_;
  Vector data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(Matrix a, double s);
Matrix operator*(double s, Matrix a);

// Standard matrix product; dimension mismatch throws std::invalid_argument.
Matrix mat_mul(const Matrix& a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);

Matrix mat_pow(const Matrix& a, unsigned n);

// Gaussian elimination with partial pivoting. Throws std::domain_error on a
// singular (within tolerance) system.
Vector solve_linear(Matrix a, Vector b);
Matrix inverse(const Matrix& a);

// Monic characteristic polynomial coefficients [1, c1, ..., cn] of a square
// matrix with n <= 8, via the Faddeev-LeVerrier recurrence.
std::vector<double> char_poly_coeffs(const Matrix& a);

// All complex roots of a monic real polynomial given as [1, c1, ..., cn]
// (Durand-Kerner iteration; fine for the n <= 8 sizes used here).
std::vector<std::complex<double>> poly_roots(const std::vector<double>& monic);

std::vector<std::complex<double>> eigenvalues(const Matrix& a);
double spectral_radius(const Matrix& a);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> x);

}  // namespace safesets
