#pragma once

#include "stpbo/linalg.hpp"
#include "stpbo/random.hpp"

namespace stpbo {

enum class Family { Gaussian, StudentT };

/// A univariate predictive marginal. For Gaussian, scale is the standard
/// deviation. For StudentT, scale is the sigma of T(mu, sigma, nu); the
/// standard deviation is sigma * sqrt(nu / (nu - 2)).
struct UnivariateMarginal {
  Family family = Family::Gaussian;
  double mu = 0.0;
  double scale = 1.0;
  double nu = 0.0;  // only meaningful for StudentT

  static UnivariateMarginal gaussian(double mu, double scale);
  static UnivariateMarginal student_t(double mu, double scale, double nu);

  double standard_deviation() const;
};

/// Multivariate Student-T parameters. The covariance is nu / (nu - 2) * shape.
struct MvtParams {
  Vector mu;
  SpdMatrix shape;
  double nu;
};

// Special functions.

/// log Gamma(a + b) - log Gamma(a), accurate when a is large and b small.
double log_gamma_ratio(double a, double b);

/// Regularized incomplete beta I_x(a, b); y = 1 - x is passed separately so
/// callers can supply it without cancellation.
double incomplete_beta(double a, double b, double x, double y);
double incomplete_beta(double a, double b, double x);

double std_normal_pdf(double z);
double std_normal_cdf(double z);

/// Standard Student-T density and CDF; nu may be any positive real.
double std_t_pdf(double z, double nu);
double std_t_cdf(double z, double nu);

/// Log density of the multivariate Student-T; requires nu > 0.
double mvt_logpdf(const Vector& y, const MvtParams& p);
double mvg_logpdf(const Vector& y, const Vector& mu, const SpdMatrix& cov);

/// mu + L z with L the jittered Cholesky factor of cov.
Vector sample_mvg(const Vector& mu, const SpdMatrix& cov, RandomStream& rng);
/// mu + L z * sqrt(nu / u), u ~ chi^2(nu).
Vector sample_mvt(const MvtParams& p, RandomStream& rng);

/// Batched forms sharing one factorization; each row of the result is a draw.
Matrix sample_mvg_rows(const Vector& mu, const SpdMatrix& cov, std::size_t n, RandomStream& rng);
Matrix sample_mvt_rows(const MvtParams& p, std::size_t n, RandomStream& rng);

/// Logs a warning for 2 < nu <= 4 (infinite kurtosis); throws for nu <= 2.
void check_process_nu(double nu);

}  // namespace stpbo
