#pragma once

// Constant-transfer formulas between the transversality-type properties.
// Pure arithmetic, individually testable.

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace tvkit::constants {

struct LedgerEntry {
  std::string formula;
  std::string source;  // "name=value,..."
  std::string target;
  double value = 0.0;
};

inline void require_positive(double x, const char* name) {
  if (!(x > 0.0)) throw std::invalid_argument(std::string(name) + " must be > 0");
}

// Step-decrease constants (M, delta) -> error-bound constants (K, delta_hat).
struct SubtrConstants {
  double K = 0.0;
  double delta_hat = 0.0;
};

inline SubtrConstants t_to_subtr(double M, double delta) {
  require_positive(M, "M");
  require_positive(delta, "delta");
  return {M + 1.0, delta / (8.0 * (1.0 + 2.0 * M))};
}

// Error-bound constants (K, delta) -> step-decrease constants
// (M, proximity radius for the nonemptiness clause).
struct TConstants {
  double M = 0.0;
  double proximity_radius = 0.0;
};

inline TConstants subtr_to_t(double K, double delta) {
  require_positive(K, "K");
  require_positive(delta, "delta");
  return {K + 2.0, delta / (4.0 * K + 10.0)};
}

inline double t_to_kappa(double M) {
  require_positive(M, "M");
  return 1.0 / (2.0 * M);
}

inline double kappa_to_t(double kappa) {
  require_positive(kappa, "kappa");
  return 2.0 / kappa;
}

inline double p_to_lt(double alpha, double eps) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0,1)");
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must lie in (0,1)");
  return alpha / (alpha + 1.0 / std::sqrt(eps));
}

inline double eval_f(double psi) {
  if (!(psi >= 0.0)) throw std::invalid_argument("psi must be >= 0");
  return psi / (2.0 * std::sqrt(psi * psi + 1.0));
}

inline double eval_g(double psi, double theta) {
  if (!(psi >= 0.0)) throw std::invalid_argument("psi must be >= 0");
  return (theta - 4.0 * psi) / (3.0 * (1.0 + 2.0 * psi) * std::sqrt(psi * psi + 1.0));
}

struct PConstants {
  double alpha = 0.0;
  double lambda_factor = 0.0;
  bool eps_clamped = false;
};

// theta in (0,1]; eps must be < 1 (larger values are clamped just below 1).
inline PConstants lt_to_p(double theta, double eps) {
  if (!(theta > 0.0 && theta <= 1.0)) throw std::invalid_argument("theta must lie in (0,1]");
  require_positive(eps, "eps");
  PConstants out;
  if (eps >= 1.0) {
    eps = 1.0 - 1e-12;
    out.eps_clamped = true;
  }
  double psi = theta / 5.0;
  out.alpha = std::min({theta / 2.0, eval_f(psi), eval_g(psi, theta)});
  out.lambda_factor = out.alpha + 1.0 / std::sqrt(eps);
  return out;
}

}  // namespace tvkit::constants
