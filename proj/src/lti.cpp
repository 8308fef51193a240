#include "safesets/lti.hpp"

#include <cmath>
#include <stdexcept>

namespace safesets {

namespace {

// Controllability matrix [B, AB, ..., A^{n-1}B] for single-input systems.
Matrix controllability(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.rows();
  Matrix c(n, n);
  Vector col(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) col[i] = b(i, 0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) c(i, j) = col[i];
    if (j + 1 < n) col = a.apply(col);
  }
  return c;
}

double rank_deficiency_gap(Matrix m) {
  // Smallest pivot from row elimination, relative to the matrix scale.
  const std::size_t n = m.rows();
  const double scale = std::max(1.0, m.inf_norm());
  double smallest = scale;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(m(r, col)) > std::abs(m(pivot, col))) pivot = r;
    }
    const double pv = std::abs(m(pivot, col));
    smallest = std::min(smallest, pv / scale);
    if (pv == 0.0) break;
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(col, j), m(pivot, j));
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = m(r, col) / m(col, col);
      for (std::size_t j = col; j < n; ++j) m(r, j) -= f * m(col, j);
    }
  }
  return smallest;
}

}  // namespace

ContinuousLTI::ContinuousLTI(Matrix a_in, Matrix b_in)
    : a(std::move(a_in)), b(std::move(b_in)) {
  if (!a.is_square()) throw std::invalid_argument("ContinuousLTI: A must be square");
  if (b.rows() != a.rows()) throw std::invalid_argument("ContinuousLTI: B row count must match A");
}

DiscreteLTI::DiscreteLTI(Matrix a_in, Matrix b_in, double dt_in)
    : a(std::move(a_in)), b(std::move(b_in)), dt(dt_in) {
  if (!a.is_square()) throw std::invalid_argument("DiscreteLTI: A must be square");
  if (b.rows() != a.rows()) throw std::invalid_argument("DiscreteLTI: B row count must match A");
  if (!(dt > 0.0)) throw std::invalid_argument("DiscreteLTI: dt must be positive");
}

FeedbackGain::FeedbackGain(Matrix k_in) : k(std::move(k_in)) {}

DiscreteLTI euler_discretize(const ContinuousLTI& sys, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("euler_discretize: dt must be positive");
  Matrix ad = Matrix::identity(sys.a.rows()) + sys.a * dt;
  Matrix bd = sys.b * dt;
  return DiscreteLTI(std::move(ad), std::move(bd), dt);
}

std::vector<double> expand_poles(const std::vector<std::complex<double>>& poles) {
  using C = std::complex<double>;
  std::vector<C> coeffs{C(1.0, 0.0)};
  for (const C& p : poles) {
    std::vector<C> next(coeffs.size() + 1, C(0.0, 0.0));
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      next[i] += coeffs[i];
      next[i + 1] -= coeffs[i] * p;
    }
    coeffs = std::move(next);
  }
  std::vector<double> real(coeffs.size());
  double scale = 0.0;
  for (const C& c : coeffs) scale = std::max(scale, std::abs(c));
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (std::abs(coeffs[i].imag()) > 1e-9 * std::max(1.0, scale)) {
      throw std::invalid_argument("expand_poles: poles must be closed under conjugation");
    }
    real[i] = coeffs[i].real();
  }
  return real;
}

FeedbackGain place_poles(const DiscreteLTI& sys,
                         const std::vector<std::complex<double>>& poles) {
  const std::size_t n = sys.a.rows();
  if (sys.b.cols() != 1) {
    throw std::invalid_argument("place_poles: only single-input systems are supported");
  }
  if (poles.size() != n) {
    throw std::invalid_argument("place_poles: need exactly one pole per state");
  }
  const Matrix ctrb = controllability(sys.a, sys.b);
  if (rank_deficiency_gap(ctrb) < 1e-10) {
    throw std::domain_error("place_poles: (A, B) pair is uncontrollable");
  }

  const std::vector<double> desired = expand_poles(poles);
  // phi(A) by Horner in the matrix argument.
  Matrix phi = Matrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    phi = phi * sys.a;
    for (std::size_t i = 0; i < n; ++i) phi(i, i) += desired[k];
  }
  // K = e_n^T C^{-1} phi(A): solve C^T w = e_n, then K = w^T phi(A).
  Vector en(n, 0.0);
  en[n - 1] = 1.0;
  const Vector w = solve_linear(ctrb.transpose(), en);
  Matrix k(1, n);
  for (std::size_t j = 0; j < n; ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += w[i] * phi(i, j);
    k(0, j) = acc;
  }
  FeedbackGain gain{k};

  // Verify the placement before handing the gain out.
  const Matrix a_cl = sys.a - sys.b * gain.k;
  const std::vector<double> got = char_poly_coeffs(a_cl);
  for (std::size_t i = 0; i <= n; ++i) {
    if (std::abs(got[i] - desired[i]) > 1e-6) {
      throw std::runtime_error("place_poles: synthesized gain failed verification");
    }
  }
  return gain;
}

FeedbackGain place_poles(const DiscreteLTI& sys, const std::vector<double>& poles) {
  std::vector<std::complex<double>> cpoles;
  cpoles.reserve(poles.size());
  for (double p : poles) cpoles.emplace_back(p, 0.0);
  return place_poles(sys, cpoles);
}

DiscreteLTI closed_loop(const DiscreteLTI& sys, const FeedbackGain& gain) {
  if (gain.k.cols() != sys.a.rows() || gain.k.rows() != sys.b.cols()) {
    throw std::invalid_argument("closed_loop: gain dimensions do not match the system");
  }
  return DiscreteLTI(sys.a - sys.b * gain.k, sys.b, sys.dt);
}

bool is_stable(const Matrix& a) {
  if (!a.is_square()) throw std::invalid_argument("is_stable: matrix must be square");
  const double rho = spectral_radius(a);
  const bool strict = rho < 1.0 - 1e-9;
  if (std::abs(rho - 1.0) < 1e-6) {
    return strict && mat_pow(a, 200).inf_norm() < 1.0;
  }
  return strict;
}

}  // namespace safesets
