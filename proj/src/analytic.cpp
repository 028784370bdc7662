#include "d2dsim/analytic.hpp"

#include <cmath>
#include <stdexcept>

namespace d2d {

void AnalyticParams::validate() const {
  if (lambda_a <= 0.0 || lambda_d <= 0.0) {
    throw std::invalid_argument("AnalyticParams: densities must be > 0");
  }
  if (n_subchannels < 1) throw std::invalid_argument("AnalyticParams: n_subchannels must be >= 1");
  if (r_d <= 0.0) throw std::invalid_argument("AnalyticParams: r_d must be > 0");
  if (alpha <= 2.0) throw std::domain_error("AnalyticParams: alpha must be > 2");
  if (b1_radial_scale <= 0.0) throw std::invalid_argument("AnalyticParams: b1_radial_scale must be > 0");
}

double kappa(double alpha) {
  if (alpha <= 2.0) throw std::domain_error("kappa: alpha must be > 2");
  return (2.0 * M_PI * M_PI / alpha) / std::sin(2.0 * M_PI / alpha);
}

double regularized_upper_gamma(int n, double z) {
  if (n < 1) throw std::invalid_argument("regularized_upper_gamma: n must be >= 1");
  if (z < 0.0) throw std::invalid_argument("regularized_upper_gamma: z must be >= 0");
  // e^-z * sum_{k<n} z^k / k!, accumulated in extended precision so the
  // leading factor survives large z.
  long double term = std::exp(static_cast<long double>(-z));
  long double sum = term;
  for (int k = 1; k < n; ++k) {
    term *= static_cast<long double>(z) / k;
    sum += term;
  }
  double q = static_cast<double>(sum);
  return q < 0.0 ? 0.0 : (q > 1.0 ? 1.0 : q);
}

double uncoordinated_ccdf(const AnalyticParams& p, double theta) {
  p.validate();
  if (theta < 0.0) throw std::invalid_argument("uncoordinated_ccdf: theta must be >= 0");
  if (theta == 0.0) return 1.0;
  const double load = p.lambda_d / p.n_subchannels;
  return std::exp(-load * kappa(p.alpha) * p.r_d * p.r_d * std::pow(theta, 2.0 / p.alpha));
}

double cell_area(const AnalyticParams& p, double r_a) {
  return p.cell_approx == kB2 ? M_PI * r_a * r_a : M_PI * (r_a / 2.0) * (r_a / 2.0);
}

InterfererDensities interferer_densities(const AnalyticParams& p, double r_a) {
  p.validate();
  if (p.n_subchannels < 2) {
    throw std::invalid_argument("interferer_densities: coordinated analysis requires N >= 2");
  }
  if (r_a <= 0.0) throw std::invalid_argument("interferer_densities: r_a must be > 0");
  InterfererDensities d;
  d.intercell = p.lambda_d / p.n_subchannels;
  const double q = regularized_upper_gamma(p.n_subchannels - 1, p.lambda_d * cell_area(p, r_a));
  d.intracell = d.intercell * (1.0 - q);
  return d;
}

namespace {

// int_0^r u / (1 + theta^-1 (u/r_d)^alpha) du.
double radial_integral(double theta, double r_d, double alpha, double r,
                       const QuadratureSpec& spec) {
  if (r <= 0.0) return 0.0;
  if (alpha == 4.0) {
    // Closed form: (r_d^2 sqrt(theta) / 2) * atan(r^2 / (r_d^2 sqrt(theta))).
    const double s = r_d * r_d * std::sqrt(theta);
    return 0.5 * s * std::atan(r * r / s);
  }
  const auto f = [&](double u) { return u / (1.0 + std::pow(u / r_d, alpha) / theta); };
  return integrate_or_throw(f, 0.0, r, spec, "radial_integral");
}

}  // namespace

double cell_exclusion_integral(const AnalyticParams& p, double theta, double r_a,
                               const QuadratureSpec& spec) {
  if (theta == 0.0) return 0.0;
  if (p.cell_approx == kB2) {
    return 2.0 * M_PI * radial_integral(theta, p.r_d, p.alpha, r_a, spec);
  }
  // Off-center disc: polar boundary r0(phi) = scale * r_a cos(phi) over
  // phi in (-pi/2, pi/2); even in phi.
  QuadratureSpec inner = spec;
  inner.rel_tol = 0.1 * spec.rel_tol;
  inner.abs_tol = 0.1 * spec.abs_tol;
  const auto f = [&](double phi) {
    return radial_integral(theta, p.r_d, p.alpha, p.b1_radial_scale * r_a * std::cos(phi), inner);
  };
  return 2.0 * integrate_or_throw(f, 0.0, M_PI / 2.0, spec, "cell_exclusion_integral");
}

double conditional_ccdf(const AnalyticParams& p, double theta, double r_a,
                        const QuadratureSpec& spec) {
  p.validate();
  if (p.n_subchannels < 2) {
    throw std::invalid_argument("conditional_ccdf: coordinated analysis requires N >= 2");
  }
  if (theta < 0.0) throw std::invalid_argument("conditional_ccdf: theta must be >= 0");
  if (r_a <= 0.0) throw std::invalid_argument("conditional_ccdf: r_a must be > 0");
  if (theta == 0.0) return 1.0;

  const double load = p.lambda_d / p.n_subchannels;
  const double base = -load * kappa(p.alpha) * p.r_d * p.r_d * std::pow(theta, 2.0 / p.alpha);
  const double q = regularized_upper_gamma(p.n_subchannels - 1, p.lambda_d * cell_area(p, r_a));
  const double bonus = load * q * cell_exclusion_integral(p, theta, r_a, spec);
  return std::exp(base + bonus);
}

double unconditional_ccdf(const AnalyticParams& p, double theta, const QuadratureSpec& spec) {
  p.validate();
  if (theta < 0.0) throw std::invalid_argument("unconditional_ccdf: theta must be >= 0");
  if (theta == 0.0) return 1.0;

  const double upper = spec.outer_truncation / std::sqrt(p.lambda_a);
  const auto f = [&](double ra) {
    const double w = 2.0 * M_PI * p.lambda_a * ra * std::exp(-M_PI * p.lambda_a * ra * ra);
    return ra > 0.0 ? w * conditional_ccdf(p, theta, ra, spec) : 0.0;
  };
  return integrate_or_throw(f, 0.0, upper, spec, "unconditional_ccdf");
}

double cellular_ccdf(double lambda_a, double alpha, double theta) {
  (void)lambda_a;  // interference-limited coverage is density-free
  if (alpha <= 2.0) throw std::domain_error("cellular_ccdf: alpha must be > 2");
  if (theta < 0.0) throw std::invalid_argument("cellular_ccdf: theta must be >= 0");
  if (theta == 0.0) return 1.0;

  double rho;
  if (alpha == 4.0) {
    const double s = std::sqrt(theta);
    rho = s * (M_PI / 2.0 - std::atan(1.0 / s));
  } else {
    // rho = theta^(2/alpha) * int_a^inf du / (1 + u^(alpha/2)), a = theta^(-2/alpha),
    // with the substitution u = a e^s turning the tail into exponential decay.
    const double a = std::pow(theta, -2.0 / alpha);
    const double decay = alpha / 2.0 - 1.0;
    const double s_max = 60.0 / decay + 5.0;
    const auto f = [&](double s) {
      const double u = a * std::exp(s);
      return u / (1.0 + std::pow(u, alpha / 2.0));
    };
    QuadratureSpec spec;
    rho = std::pow(theta, 2.0 / alpha) * integrate_or_throw(f, 0.0, s_max, spec, "cellular_ccdf");
  }
  return 1.0 / (1.0 + rho);
}

}  // namespace d2d
