#include "stpbo/linalg.hpp"

#include <cmath>
#include <string>

#include "stpbo/errors.hpp"

namespace stpbo {

SpdMatrix::SpdMatrix(Matrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
    throw DimensionMismatch("SpdMatrix must be square and nonempty");
  }
  const double scale = std::max(1.0, entries_.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < entries_.rows(); ++i) {
    if (!(entries_(i, i) > 0.0)) {
      throw InvalidParameter("SpdMatrix diagonal entry " + std::to_string(i) + " is not positive");
    }
    for (Eigen::Index j = 0; j < i; ++j) {
      if (std::abs(entries_(i, j) - entries_(j, i)) > 1e-12 * scale) {
        throw InvalidParameter("SpdMatrix is not symmetric");
      }
    }
  }
}

CholeskyFactor cholesky(const SpdMatrix& m, const JitterPolicy& policy) {
  const Matrix& a = m.entries();
  const double mean_diag = a.diagonal().mean();
  for (double rel = policy.initial; rel <= policy.maximum * (1.0 + 1e-9); rel *= policy.growth) {
    const double jitter = rel * mean_diag;
    Matrix shifted = a;
    shifted.diagonal().array() += jitter;
    Eigen::LLT<Matrix> llt(shifted);
    if (llt.info() == Eigen::Success) {
      Matrix lower = llt.matrixL();
      if ((lower.diagonal().array() > 0.0).all()) return CholeskyFactor(std::move(lower), jitter);
    }
  }
  throw NotPositiveDefinite("matrix of dimension " + std::to_string(a.rows()) +
                            " is not positive definite after maximum jitter");
}

namespace {

void check_rows(const CholeskyFactor& f, Eigen::Index rows) {
  if (rows != f.dim()) {
    throw DimensionMismatch("factor has dimension " + std::to_string(f.dim()) +
                            " but right-hand side has " + std::to_string(rows) + " rows");
  }
}

}  // namespace

Matrix solve_lower(const CholeskyFactor& f, const Matrix& b) {
  check_rows(f, b.rows());
  return f.lower().triangularView<Eigen::Lower>().solve(b);
}

Matrix solve(const CholeskyFactor& f, const Matrix& b) {
  check_rows(f, b.rows());
  const auto lower = f.lower().triangularView<Eigen::Lower>();
  Matrix x = lower.solve(b);
  lower.transpose().solveInPlace(x);
  return x;
}

Vector solve(const CholeskyFactor& f, const Vector& b) {
  check_rows(f, b.size());
  const auto lower = f.lower().triangularView<Eigen::Lower>();
  Vector x = lower.solve(b);
  lower.transpose().solveInPlace(x);
  return x;
}

double log_det(const CholeskyFactor& f) {
  return 2.0 * f.lower().diagonal().array().log().sum();
}

double quadratic_form(const CholeskyFactor& f, const Vector& y) {
  check_rows(f, y.size());
  const Vector w = f.lower().triangularView<Eigen::Lower>().solve(y);
  return w.squaredNorm();
}

}  // namespace stpbo
