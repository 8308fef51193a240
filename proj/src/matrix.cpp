#include "safesets/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace safesets {

namespace {
constexpr std::size_t kMaxEigenDim = 8;
}

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {
  validate();
}

Matrix::Matrix(std::size_t rows, std::size_t cols, Vector entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) {
    throw std::invalid_argument("Matrix: entry count does not match rows*cols");
  }
  validate();
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) {
      throw std::invalid_argument("Matrix: ragged initializer rows");
    }
    data_.insert(data_.end(), r.begin(), r.end());
  }
  validate();
}

void Matrix::validate() const {
  if (rows_ < 1 || cols_ < 1) {
    throw std::invalid_argument("Matrix: dimensions must be at least 1x1");
  }
  for (double v : data_) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("Matrix: entries must be finite");
    }
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Vector Matrix::row(std::size_t i) const {
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

Vector Matrix::apply(std::span<const double> x) const {
  if (x.size() != cols_) {
    throw std::invalid_argument("Matrix::apply: dimension mismatch");
  }
  Vector y(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) acc += (*this)(i, j) * x[j];
    y[i] = acc;
  }
  return y;
}

double Matrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double Matrix::inf_norm() const {
  double best = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) s += std::abs((*this)(i, j));
    best = std::max(best, s);
  }
  return best;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw std::invalid_argument("Matrix +: dimension mismatch");
  }
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw std::invalid_argument("Matrix -: dimension mismatch");
  }
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(Matrix a, double s) { return a *= s; }
Matrix operator*(double s, Matrix a) { return a *= s; }

Matrix mat_mul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("mat_mul: inner dimensions differ");
  }
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

Matrix operator*(const Matrix& a, const Matrix& b) { return mat_mul(a, b); }

Matrix mat_pow(const Matrix& a, unsigned n) {
  if (!a.is_square()) throw std::invalid_argument("mat_pow: matrix must be square");
  Matrix result = Matrix::identity(a.rows());
  Matrix base = a;
  while (n > 0) {
    if (n & 1u) result = result * base;
    n >>= 1u;
    if (n > 0) base = base * base;
  }
  return result;
}

Vector solve_linear(Matrix a, Vector b) {
  if (!a.is_square() || a.rows() != b.size()) {
    throw std::invalid_argument("solve_linear: dimension mismatch");
  }
  const std::size_t n = a.rows();
  double scale = a.inf_norm();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
    }
    if (std::abs(a(pivot, col)) <= 1e-13 * std::max(1.0, scale)) {
      throw std::domain_error("solve_linear: singular system");
    }
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(col, j), a(pivot, j));
      std::swap(b[col], b[pivot]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a(r, col) / a(col, col);
      if (f == 0.0) continue;
      for (std::size_t j = col; j < n; ++j) a(r, j) -= f * a(col, j);
      b[r] -= f * b[col];
    }
  }
  Vector x(n, 0.0);
  for (std::size_t ii = n; ii-- > 0;) {
    double acc = b[ii];
    for (std::size_t j = ii + 1; j < n; ++j) acc -= a(ii, j) * x[j];
    x[ii] = acc / a(ii, ii);
  }
  return x;
}

Matrix inverse(const Matrix& a) {
  if (!a.is_square()) throw std::invalid_argument("inverse: matrix must be square");
  const std::size_t n = a.rows();
  Matrix inv(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    Vector e(n, 0.0);
    e[j] = 1.0;
    Vector col = solve_linear(a, std::move(e));
    for (std::size_t i = 0; i < n; ++i) inv(i, j) = col[i];
  }
  return inv;
}

std::vector<double> char_poly_coeffs(const Matrix& a) {
  if (!a.is_square()) {
    throw std::invalid_argument("char_poly_coeffs: matrix must be square");
  }
  const std::size_t n = a.rows();
  if (n > kMaxEigenDim) {
    throw std::invalid_argument("char_poly_coeffs: dimension capped at 8");
  }
  // Faddeev-LeVerrier: M1 = A, c1 = -tr(M1), M_{k+1} = A (M_k + c_k I).
  std::vector<double> coeffs(n + 1, 0.0);
  coeffs[0] = 1.0;
  Matrix m = a;
  for (std::size_t k = 1; k <= n; ++k) {
    coeffs[k] = -m.trace() / static_cast<double>(k);
    if (k == n) break;
    for (std::size_t i = 0; i < n; ++i) m(i, i) += coeffs[k];
    m = a * m;
  }
  return coeffs;
}

std::vector<std::complex<double>> poly_roots(const std::vector<double>& monic) {
  if (monic.size() < 2 || monic.front() != 1.0) {
    throw std::invalid_argument("poly_roots: expected monic coefficients [1, ...]");
  }
  const std::size_t n = monic.size() - 1;
  using C = std::complex<double>;
  auto eval = [&](C z) {
    C acc(1.0, 0.0);
    for (std::size_t k = 1; k <= n; ++k) acc = acc * z + monic[k];
    return acc;
  };
  // Cauchy bound keeps the iterates in a sane disk.
  double bound = 0.0;
  for (std::size_t k = 1; k <= n; ++k) bound = std::max(bound, std::abs(monic[k]));
  bound += 1.0;

  std::vector<C> z(n);
  const C seed(0.4, 0.9);
  C cur(1.0, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    cur *= seed;
    z[i] = cur;
  }
  for (int iter = 0; iter < 500; ++iter) {
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      C denom(1.0, 0.0);
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) denom *= (z[i] - z[j]);
      }
      if (std::abs(denom) < 1e-300) {
        z[i] += C(1e-8, 1e-8);
        continue;
      }
      const C delta = eval(z[i]) / denom;
      z[i] -= delta;
      if (std::abs(z[i]) > 4.0 * bound) z[i] = C(0.5, 0.3) * bound;
      worst = std::max(worst, std::abs(delta));
    }
    if (worst < 1e-14 * std::max(1.0, bound)) break;
  }
  return z;
}

std::vector<std::complex<double>> eigenvalues(const Matrix& a) {
  return poly_roots(char_poly_coeffs(a));
}

double spectral_radius(const Matrix& a) {
  double r = 0.0;
  for (const auto& z : eigenvalues(a)) r = std::max(r, std::abs(z));
  return r;
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

}  // namespace safesets
