#pragma once

// Analytic iteration-count estimates for reaching accuracy eps from an
// initial distance R0 on an (L, mu)-conditioned problem. All four are
// closed-form functions of the inputs; the validity domain is
// eps <= mu R0^2 / 2 (outside it the logarithm goes negative and the
// estimates are meaningless).

#include <cmath>

#include "sfgm/errors.hpp"

namespace sfgm {

template <class Scalar>
struct IterationBounds {
  Scalar k_sfgm = Scalar(0);             // sqrt(L/(mu+S)) (ln(mu R0^2/2eps) + ln 5)
  Scalar k_sfgm_asymptotic = Scalar(0);  // same with S -> mu
  Scalar k_fgm = Scalar(0);              // sqrt(L/mu) (ln(mu R0^2/2eps) + ln(23/3))
  Scalar k_lower = Scalar(0);            // ((sqrt(L/mu)-1)/4) ln(mu R0^2/2eps)
};

template <class Scalar>
IterationBounds<Scalar> iteration_lower_bounds(Scalar L, Scalar mu, Scalar S, Scalar R0,
                                               Scalar eps) {
  if (L <= Scalar(0)) throw ConfigError("L must be positive");
  if (mu <= Scalar(0)) throw ConfigError("mu must be positive");
  if (S < Scalar(0)) throw ConfigError("S must be nonnegative");
  if (eps <= Scalar(0)) throw ConfigError("eps must be positive");
  if (eps > mu * R0 * R0 / Scalar(2))
    throw ValidityDomain("requires eps <= mu*R0^2/2; requested accuracy is too loose "
                         "for these estimates to apply");
  const Scalar ln_term = std::log(mu * R0 * R0 / (Scalar(2) * eps));
  const Scalar ln5 = std::log(Scalar(5));
  const Scalar ln23_3 = std::log(Scalar(23) / Scalar(3));
  IterationBounds<Scalar> out;
  out.k_sfgm = std::sqrt(L / (mu + S)) * (ln_term + ln5);
  out.k_sfgm_asymptotic = std::sqrt(L / (Scalar(2) * mu)) * (ln_term + ln5);
  out.k_fgm = std::sqrt(L / mu) * (ln_term + ln23_3);
  out.k_lower = (std::sqrt(L / mu) - Scalar(1)) / Scalar(4) * ln_term;
  return out;
}

}  // namespace sfgm
