#include "miniccg/pipeline/glicko2.h"

#include <cmath>
#include <numbers>

namespace miniccg {

namespace {

constexpr double kScale = 173.7178;

double g(double phi) { return 1.0 / std::sqrt(1.0 + 3.0 * phi * phi / (std::numbers::pi * std::numbers::pi)); }

}  // namespace

GlickoRating glicko2_update(const GlickoRating& r, const std::vector<GlickoResult>& results,
                            const GlickoOptions& options) {
  const double mu = (r.rating - 1500.0) / kScale;
  const double phi = r.deviation / kScale;
  const double sigma = r.volatility;

  if (results.empty()) {
    GlickoRating out = r;
    out.deviation = std::sqrt(phi * phi + sigma * sigma) * kScale;
    return out;
  }

  double v_inv = 0.0;
  double sum = 0.0;
  for (const GlickoResult& res : results) {
    const double mu_j = (res.opponent.rating - 1500.0) / kScale;
    const double phi_j = res.opponent.deviation / kScale;
    const double gj = g(phi_j);
    const double e = 1.0 / (1.0 + std::exp(-gj * (mu - mu_j)));
    v_inv += gj * gj * e * (1.0 - e);
    sum += gj * (res.score - e);
  }
  const double v = 1.0 / v_inv;
  const double delta = v * sum;

  // New volatility: root of f by the Illinois variant of regula falsi.
  const double tau = options.tau;
  const double a = std::log(sigma * sigma);
  auto f = [&](double x) {
    const double ex = std::exp(x);
    const double d = phi * phi + v + ex;
    return ex * (delta * delta - phi * phi - v - ex) / (2.0 * d * d) - (x - a) / (tau * tau);
  };
  double A = a;
  double B;
  if (delta * delta > phi * phi + v) {
    B = std::log(delta * delta - phi * phi - v);
  } else {
    int k = 1;
    while (f(a - k * tau) < 0.0) ++k;
    B = a - k * tau;
  }
  double fa = f(A);
  double fb = f(B);
  while (std::abs(B - A) > options.tolerance) {
    const double C = A + (A - B) * fa / (fb - fa);
    const double fc = f(C);
    if (fc * fb <= 0.0) {
      A = B;
      fa = fb;
    } else {
      fa /= 2.0;
    }
    B = C;
    fb = fc;
  }
  const double sigma_new = std::exp(A / 2.0);

  const double phi_star = std::sqrt(phi * phi + sigma_new * sigma_new);
  const double phi_new = 1.0 / std::sqrt(1.0 / (phi_star * phi_star) + 1.0 / v);
  const double mu_new = mu + phi_new * phi_new * sum;

  return {mu_new * kScale + 1500.0, phi_new * kScale, sigma_new};
}

}  // namespace miniccg
