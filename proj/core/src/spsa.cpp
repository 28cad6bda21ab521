#include "qcluster/spsa.hpp"

#include "qcluster/seeding.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qcluster {

void SpsaConfig::validate() const {
  if (!(a > 0.0) || !(c > 0.0)) throw std::invalid_argument("SPSA gains a and c must be positive");
  if (!(alpha > 0.5 && alpha <= 1.0)) throw std::invalid_argument("SPSA alpha must lie in (0.5, 1]");
  if (!(A >= 0.0)) throw std::invalid_argument("SPSA stability constant A must be nonnegative");
  if (!(gamma_exp > 0.0)) throw std::invalid_argument("SPSA gamma exponent must be positive");
}

SpsaResult spsa_minimize(const Objective& objective, std::vector<double> x0, const SpsaConfig& cfg) {
  cfg.validate();
  const std::size_t dim = x0.size();
  SpsaResult result;

  const double f0 = objective(x0);
  ++result.evaluations;
  if (!std::isfinite(f0)) throw std::invalid_argument("SPSA objective is not finite at the initial point");
  result.x_best = x0;
  result.f_best = f0;
  result.trace.push_back({0, f0});

  SplitMix64 rng(cfg.seed);
  std::vector<double> x = std::move(x0);
  std::vector<double> delta(dim), plus(dim), minus(dim), next(dim);

  for (std::size_t k = 0; k < cfg.max_iters; ++k) {
    for (auto& d : delta) d = rng.rademacher();
    const double kk = static_cast<double>(k);
    double ak = cfg.a / std::pow(kk + 1.0 + cfg.A, cfg.alpha);
    double ck = cfg.c / std::pow(kk + 1.0, cfg.gamma_exp);

    double f_next = 0.0;
    bool ok = false;
    for (int attempt = 0; attempt < 2 && !ok; ++attempt) {
      for (std::size_t i = 0; i < dim; ++i) {
        plus[i] = x[i] + ck * delta[i];
        minus[i] = x[i] - ck * delta[i];
      }
      const double fp = objective(plus);
      const double fm = objective(minus);
      result.evaluations += 2;
      if (std::isfinite(fp) && std::isfinite(fm)) {
        const double slope = (fp - fm) / (2.0 * ck);
        // Rademacher entries are ±1, so 1/delta_i == delta_i.
        for (std::size_t i = 0; i < dim; ++i) next[i] = x[i] - ak * slope * delta[i];
        f_next = objective(next);
        ++result.evaluations;
        ok = std::isfinite(f_next);
      }
      if (!ok) {
        ak *= 0.5;
        ck *= 0.5;
      }
    }
    if (!ok) {
      throw std::runtime_error("SPSA: objective became non-finite at iteration " + std::to_string(k) +
                               " even after halving the step");
    }

    x.swap(next);
    result.trace.push_back({k + 1, f_next});
    if (f_next < result.f_best) {
      result.f_best = f_next;
      result.x_best = x;
    }
  }
  return result;
}

}  // namespace qcluster
