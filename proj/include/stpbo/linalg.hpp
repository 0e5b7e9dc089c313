#pragma once

#include <Eigen/Dense>

namespace stpbo {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Symmetric matrix with a strictly positive diagonal. Positive
/// definiteness is only established by a successful factorization.
class SpdMatrix {
 public:
  explicit SpdMatrix(Matrix entries);

  Eigen::Index dim() const { return entries_.rows(); }
  const Matrix& entries() const { return entries_; }
  double operator()(Eigen::Index i, Eigen::Index j) const { return entries_(i, j); }

 private:
  Matrix entries_;
};

/// Lower Cholesky factor of (source + jitter * I).
class CholeskyFactor {
 public:
  CholeskyFactor(Matrix lower, double jitter) : lower_(std::move(lower)), jitter_(jitter) {}

  Eigen::Index dim() const { return lower_.rows(); }
  const Matrix& lower() const { return lower_; }
  /// Diagonal shift that was added before the factorization succeeded.
  double jitter() const { return jitter_; }

 private:
  Matrix lower_;
  double jitter_;
};

struct JitterPolicy {
  double initial = 1e-10;  // relative to mean(diag)
  double maximum = 1e-4;
  double growth = 10.0;
};

/// Factorizes m + jitter * I, starting at initial * mean(diag) and
/// escalating on pivot failure. Throws NotPositiveDefinite past the maximum.
CholeskyFactor cholesky(const SpdMatrix& m, const JitterPolicy& policy = {});

Vector solve(const CholeskyFactor& f, const Vector& b);
Matrix solve(const CholeskyFactor& f, const Matrix& b);

/// L^{-1} b, the half solve used for quadratic forms and variances.
Matrix solve_lower(const CholeskyFactor& f, const Matrix& b);

double log_det(const CholeskyFactor& f);

/// y^T A^{-1} y for the factored matrix A.
double quadratic_form(const CholeskyFactor& f, const Vector& y);

}  // namespace stpbo
