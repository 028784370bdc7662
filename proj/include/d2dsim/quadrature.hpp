#pragma once

#include <cmath>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace d2d {

struct QuadratureSpec {
  double rel_tol = 1e-10;
  double abs_tol = 1e-13;
  int max_subdivisions = 400;
  double outer_truncation = 5.0;  // serving-distance integral cutoff, in units of 1/sqrt(lambda_a)
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int subdivisions = 0;
  bool converged = false;
};

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, const QuadratureResult& partial)
      : std::runtime_error(what), partial_(partial) {}
  const QuadratureResult& partial() const { return partial_; }

 private:
  QuadratureResult partial_;
};

namespace detail {

// 15-point Kronrod nodes/weights with the embedded 7-point Gauss rule
// (positive half; the rule is symmetric).
constexpr double kKronrodNodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <class F>
void gauss_kronrod_15(F&& f, double a, double b, double& value, double& error) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);

  double fv[15];
  for (int i = 0; i < 7; ++i) {
    fv[i] = f(mid - half * kKronrodNodes[i]);
    fv[14 - i] = f(mid + half * kKronrodNodes[i]);
  }
  fv[7] = f(mid);

  double kronrod = kKronrodWeights[7] * fv[7];
  double gauss = kGaussWeights[3] * fv[7];
  for (int i = 0; i < 7; ++i) {
    kronrod += kKronrodWeights[i] * (fv[i] + fv[14 - i]);
    if (i % 2 == 1) {
      gauss += kGaussWeights[i / 2] * (fv[i] + fv[14 - i]);
    }
  }
  value = kronrod * half;
  error = std::abs((kronrod - gauss) * half);
}

}  // namespace detail

// Globally adaptive Gauss-Kronrod integration over [a, b]: keep splitting the
// segment with the largest error estimate until the accumulated error is
// within tolerance.
template <class F>
QuadratureResult integrate_adaptive(F&& f, double a, double b, const QuadratureSpec& spec = {}) {
  struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& o) const { return error < o.error; }
  };

  QuadratureResult result;
  if (a == b) {
    result.converged = true;
    return result;
  }

  std::priority_queue<Segment> queue;
  Segment s{a, b, 0.0, 0.0};
  detail::gauss_kronrod_15(f, a, b, s.value, s.error);
  double total = s.value;
  double total_err = s.error;
  queue.push(s);
  result.subdivisions = 1;

  while (total_err > std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) {
    if (result.subdivisions >= spec.max_subdivisions) {
      result.value = total;
      result.error_estimate = total_err;
      result.converged = false;
      return result;
    }
    const Segment worst = queue.top();
    queue.pop();
    total -= worst.value;
    total_err -= worst.error;

    const double mid = 0.5 * (worst.a + worst.b);
    for (const auto& [lo, hi] : {std::pair{worst.a, mid}, std::pair{mid, worst.b}}) {
      Segment child{lo, hi, 0.0, 0.0};
      detail::gauss_kronrod_15(f, lo, hi, child.value, child.error);
      total += child.value;
      total_err += child.error;
      queue.push(child);
    }
    ++result.subdivisions;
  }

  result.value = total;
  result.error_estimate = total_err;
  result.converged = true;
  return result;
}

// Convenience wrapper that throws QuadratureError on non-convergence.
template <class F>
double integrate_or_throw(F&& f, double a, double b, const QuadratureSpec& spec,
                          const char* context) {
  QuadratureResult r = integrate_adaptive(std::forward<F>(f), a, b, spec);
  if (!r.converged) {
    throw QuadratureError(std::string("quadrature did not converge in ") + context +
                              " (error estimate " + std::to_string(r.error_estimate) + " after " +
                              std::to_string(r.subdivisions) + " subdivisions)",
                          r);
  }
  return r.value;
}

}  // namespace d2d
