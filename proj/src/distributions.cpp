#include "stpbo/distributions.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <spdlog/spdlog.h>

#include "stpbo/errors.hpp"

namespace stpbo {

UnivariateMarginal UnivariateMarginal::gaussian(double mu, double scale) {
  return {Family::Gaussian, mu, scale, 0.0};
}

UnivariateMarginal UnivariateMarginal::student_t(double mu, double scale, double nu) {
  return {Family::StudentT, mu, scale, nu};
}

double UnivariateMarginal::standard_deviation() const {
  if (family == Family::Gaussian) return scale;
  return scale * std::sqrt(nu / (nu - 2.0));
}

namespace {

// Stirling remainder of log Gamma(z), valid to ~1e-15 for z >= 20.
double stirling_tail(double z) {
  const double r = 1.0 / z;
  const double r2 = r * r;
  return r * (1.0 / 12.0 - r2 * (1.0 / 360.0 - r2 * (1.0 / 1260.0 - r2 / 1680.0)));
}

double log_beta(double a, double b) {
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);
  return std::lgamma(lo) - log_gamma_ratio(hi, lo);
}

// Continued fraction for the incomplete beta (modified Lentz).
double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIterations = 20000;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h;
  }
  spdlog::warn("incomplete beta continued fraction did not converge (a={}, b={}, x={})", a, b, x);
  return h;
}

}  // namespace

double log_gamma_ratio(double a, double b) {
  if (a >= 20.0 && a + b >= 20.0) {
    return (a - 0.5) * std::log1p(b / a) + b * std::log(a + b) - b + stirling_tail(a + b) -
           stirling_tail(a);
  }
  return std::lgamma(a + b) - std::lgamma(a);
}

double incomplete_beta(double a, double b, double x, double y) {
  if (!(a > 0.0) || !(b > 0.0)) throw InvalidParameter("incomplete beta needs a, b > 0");
  if (x <= 0.0) return 0.0;
  if (y <= 0.0) return 1.0;
  const double log_front = a * std::log(x) + b * std::log(y) - log_beta(a, b);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return std::exp(log_front) * beta_continued_fraction(a, b, x) / a;
  }
  return 1.0 - std::exp(log_front) * beta_continued_fraction(b, a, y) / b;
}

double incomplete_beta(double a, double b, double x) { return incomplete_beta(a, b, x, 1.0 - x); }

double std_normal_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi); }

double std_normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

namespace {

void check_positive_nu(double nu) {
  if (!(nu > 0.0)) throw InvalidParameter("degrees of freedom must be positive, got " + std::to_string(nu));
}

}  // namespace

double std_t_pdf(double z, double nu) {
  check_positive_nu(nu);
  const double log_c = log_gamma_ratio(0.5 * nu, 0.5) - 0.5 * std::log(nu * std::numbers::pi);
  return std::exp(log_c - 0.5 * (nu + 1.0) * std::log1p(z * z / nu));
}

double std_t_cdf(double z, double nu) {
  check_positive_nu(nu);
  if (z == 0.0) return 0.5;
  const double z2 = z * z;
  const double x = nu / (nu + z2);
  const double y = z2 / (nu + z2);
  const double tail = 0.5 * incomplete_beta(0.5 * nu, 0.5, x, y);
  return z > 0.0 ? 1.0 - tail : tail;
}

double mvt_logpdf(const Vector& y, const MvtParams& p) {
  check_positive_nu(p.nu);
  if (y.size() != p.mu.size() || p.shape.dim() != p.mu.size()) {
    throw DimensionMismatch("mvt_logpdf: y has length " + std::to_string(y.size()) +
                            ", mu has length " + std::to_string(p.mu.size()));
  }
  const double d = static_cast<double>(y.size());
  const CholeskyFactor f = cholesky(p.shape);
  const double q = quadratic_form(f, y - p.mu);
  return log_gamma_ratio(0.5 * p.nu, 0.5 * d) - 0.5 * d * std::log(p.nu * std::numbers::pi) -
         0.5 * log_det(f) - 0.5 * (p.nu + d) * std::log1p(q / p.nu);
}

double mvg_logpdf(const Vector& y, const Vector& mu, const SpdMatrix& cov) {
  if (y.size() != mu.size() || cov.dim() != mu.size()) {
    throw DimensionMismatch("mvg_logpdf: y has length " + std::to_string(y.size()) +
                            ", mu has length " + std::to_string(mu.size()));
  }
  const double d = static_cast<double>(y.size());
  const CholeskyFactor f = cholesky(cov);
  const double q = quadratic_form(f, y - mu);
  return -0.5 * d * std::log(2.0 * std::numbers::pi) - 0.5 * log_det(f) - 0.5 * q;
}

namespace {

Vector standard_normal_vector(Eigen::Index n, RandomStream& rng) {
  Vector z(n);
  for (Eigen::Index i = 0; i < n; ++i) z(i) = rng.normal();
  return z;
}

}  // namespace

Matrix sample_mvg_rows(const Vector& mu, const SpdMatrix& cov, std::size_t n, RandomStream& rng) {
  if (cov.dim() != mu.size()) throw DimensionMismatch("sample_mvg: mu and cov disagree");
  const CholeskyFactor f = cholesky(cov);
  Matrix draws(static_cast<Eigen::Index>(n), mu.size());
  for (Eigen::Index r = 0; r < draws.rows(); ++r) {
    const Vector z = standard_normal_vector(mu.size(), rng);
    const Vector lz = f.lower().triangularView<Eigen::Lower>() * z;
    draws.row(r) = (mu + lz).transpose();
  }
  return draws;
}

Matrix sample_mvt_rows(const MvtParams& p, std::size_t n, RandomStream& rng) {
  check_positive_nu(p.nu);
  if (p.shape.dim() != p.mu.size()) throw DimensionMismatch("sample_mvt: mu and shape disagree");
  const CholeskyFactor f = cholesky(p.shape);
  Matrix draws(static_cast<Eigen::Index>(n), p.mu.size());
  for (Eigen::Index r = 0; r < draws.rows(); ++r) {
    const Vector z = standard_normal_vector(p.mu.size(), rng);
    const double u = rng.chi_squared(p.nu);
    const Vector lz = f.lower().triangularView<Eigen::Lower>() * z;
    draws.row(r) = (p.mu + std::sqrt(p.nu / u) * lz).transpose();
  }
  return draws;
}

Vector sample_mvg(const Vector& mu, const SpdMatrix& cov, RandomStream& rng) {
  return sample_mvg_rows(mu, cov, 1, rng).row(0).transpose();
}

Vector sample_mvt(const MvtParams& p, RandomStream& rng) {
  return sample_mvt_rows(p, 1, rng).row(0).transpose();
}

void check_process_nu(double nu) {
  if (!(nu > 2.0) || !std::isfinite(nu)) {
    throw InvalidParameter("Student-T process needs finite nu > 2, got " + std::to_string(nu));
  }
  if (nu <= 4.0) spdlog::warn("nu = {} has infinite kurtosis (finite only for nu > 4)", nu);
}

}  // namespace stpbo
