#pragma once

// Runtime tracking of the estimating-sequence quantities behind the
// accelerated solver: the contraction product lambda_k, the memory term
// psi_k, the scanning-function model Phi_k with its minimum value phi*_k,
// and the analytic per-iteration bounds certified against observed traces.
//
// The model at iteration k is
//   Phi_k(x) = phi*_k + (gamma_k/2)|x - v_k|^2 - sum_i beta_i (gamma_i/2)|x - v_i|^2
// and phi*_{k+1} follows a long ten-term recursion evaluated verbatim below.
// The tracker keeps the full (gamma_i, v_i) history implied by the schedule;
// it is attached only in certification mode so plain solves stay O(n).

#include <cmath>
#include <limits>
#include <vector>

#include "sfgm/errors.hpp"
#include "sfgm/oracle.hpp"
#include "sfgm/schedule.hpp"
#include "sfgm/solver.hpp"

namespace sfgm {

// lambda_{k+1} = (1 - alpha_k) lambda_k.
template <class Scalar>
Scalar update_lambda(Scalar lambda, Scalar alpha) {
  return (Scalar(1) - alpha) * lambda;
}

// psi_k(x) = sum_i beta_i (gamma_i/2) |x - v_i|^2 over the weighted memory.
template <class Scalar>
Scalar eval_psi(const std::vector<MemoryEntry<Scalar>>& memory, const VecX<Scalar>& x) {
  Scalar total = Scalar(0);
  for (const auto& e : memory) {
    if (e.beta == Scalar(0) || e.gamma == Scalar(0)) continue;
    total += e.beta * (e.gamma / Scalar(2)) * (x - e.v).squaredNorm();
  }
  return total;
}

// Argmin of Phi_k: (gamma_k v_k - sum beta gamma_i v_i)/(gamma_k - sum beta gamma_i).
// Requires strictly positive curvature of the model.
template <class Scalar>
VecX<Scalar> phi_argmin(Scalar gamma_k, const VecX<Scalar>& v_k,
                        const std::vector<MemoryEntry<Scalar>>& memory) {
  Scalar weighted = Scalar(0);
  VecX<Scalar> num = gamma_k * v_k;
  for (const auto& e : memory) {
    const Scalar w = e.beta * e.gamma;
    if (w == Scalar(0)) continue;
    weighted += w;
    num -= w * e.v;
  }
  const Scalar curvature = gamma_k - weighted;
  if (curvature <= Scalar(0))
    throw FlatScanningFunction("model curvature gamma_k - sum beta gamma_i is not positive");
  return num / curvature;
}

// Phi*_k evaluated at a given argmin candidate.
template <class Scalar>
Scalar phi_min_value(Scalar phi_star, Scalar gamma_k, const VecX<Scalar>& v_k,
                     const std::vector<MemoryEntry<Scalar>>& memory,
                     const VecX<Scalar>& x_phi) {
  return phi_star + (gamma_k / Scalar(2)) * (x_phi - v_k).squaredNorm() -
         eval_psi(memory, x_phi);
}

// The verbatim ten-term recursion for phi*_{k+1}. Note two asymmetries kept
// exactly as derived: the mu-augmented |y - v_k|^2 coefficient sums memory
// weights only over origins i >= 1, and the model-minimum memory term has no
// (1 - alpha) factor. Origins are recorded in the memory entries.
template <class Scalar>
Scalar update_phi_star(Scalar phi_star, Scalar alpha, Scalar gamma_k, Scalar gamma_next,
                       Scalar mu, Scalar f_y, const VecX<Scalar>& y, const VecX<Scalar>& grad,
                       const VecX<Scalar>& v_k, const VecX<Scalar>& x_phi,
                       const std::vector<MemoryEntry<Scalar>>& memory) {
  const Scalar one_minus = Scalar(1) - alpha;
  const Scalar grad_norm = grad.norm();
  const Scalar y_v = (y - v_k).norm();

  Scalar sum_from_1 = Scalar(0);        // sum beta gamma_i over origins >= 1
  Scalar cauchy_vy_g = Scalar(0);       // sum beta gamma_i |v_i - y| |grad|
  Scalar cauchy_yv_yvk = Scalar(0);     // sum beta gamma_i |y - v_i| |y - v_k|
  Scalar quad_y = Scalar(0);            // sum (beta gamma_i / 2) |y - v_i|^2
  Scalar inner_vy_g = Scalar(0);        // sum beta gamma_i (v_i - y)' grad
  Scalar quad_xphi = Scalar(0);         // sum (beta gamma_i / 2) |x_phi - v_i|^2
  for (const auto& e : memory) {
    const Scalar w = e.beta * e.gamma;
    if (w == Scalar(0)) continue;
    if (e.origin >= 1) sum_from_1 += w;
    const Scalar dist_vy = (e.v - y).norm();
    cauchy_vy_g += w * dist_vy * grad_norm;
    cauchy_yv_yvk += w * dist_vy * y_v;
    quad_y += (w / Scalar(2)) * (y - e.v).squaredNorm();
    inner_vy_g += w * (e.v - y).dot(grad);
    quad_xphi += (w / Scalar(2)) * (x_phi - e.v).squaredNorm();
  }

  Scalar value = alpha * f_y + one_minus * phi_star;
  value += alpha * gamma_k * one_minus * (mu + sum_from_1) / (Scalar(2) * gamma_next) *
           y_v * y_v;
  value += alpha * alpha * alpha / gamma_next * cauchy_vy_g;
  value += one_minus * (gamma_k / Scalar(2)) * (x_phi - v_k).squaredNorm();
  value -= alpha * alpha * grad_norm * grad_norm / (Scalar(2) * gamma_next);
  value += alpha * one_minus * gamma_k / gamma_next *
           ((v_k - y).dot(grad) + cauchy_yv_yvk);
  value += alpha * quad_y;
  value += one_minus * alpha * alpha / gamma_next * inner_vy_g;
  value += quad_xphi;
  return value;
}

// Memoryless reduction of the recursion (all beta = 0), coded independently
// as a cross-check for the full form.
template <class Scalar>
Scalar update_phi_star_reduced(Scalar phi_star, Scalar alpha, Scalar gamma_k,
                               Scalar gamma_next, Scalar mu, Scalar f_y,
                               const VecX<Scalar>& y, const VecX<Scalar>& grad,
                               const VecX<Scalar>& v_k, const VecX<Scalar>& x_phi) {
  const Scalar one_minus = Scalar(1) - alpha;
  return alpha * f_y + one_minus * phi_star +
         alpha * gamma_k * one_minus * mu / (Scalar(2) * gamma_next) *
             (y - v_k).squaredNorm() +
         one_minus * (gamma_k / Scalar(2)) * (x_phi - v_k).squaredNorm() -
         alpha * alpha * grad.squaredNorm() / (Scalar(2) * gamma_next) +
         alpha * one_minus * gamma_k / gamma_next * (v_k - y).dot(grad);
}

// Analytic contraction bounds at iteration k (both decrease in k):
//   exponential: 2 mu / (L (e^q - e^{-q})^2), q = ((k+1)/2) sqrt((mu+S)/L)
//   polynomial:  2 mu / ((mu+S) (k+1)^2)
template <class Scalar>
std::pair<Scalar, Scalar> lemma4_bounds(long k, Scalar mu, Scalar L, Scalar S) {
  const Scalar q = (Scalar(k + 1) / Scalar(2)) * std::sqrt((mu + S) / L);
  const Scalar twosinh = Scalar(2) * std::sinh(q);
  Scalar exp_bound = Scalar(2) * mu / (L * twosinh * twosinh);
  if (!std::isfinite(exp_bound)) exp_bound = Scalar(0);  // sinh overflow: bound underflows
  const Scalar poly_bound = Scalar(2) * mu / ((mu + S) * Scalar(k + 1) * Scalar(k + 1));
  return {exp_bound, poly_bound};
}

template <class Scalar>
std::pair<Scalar, Scalar> lemma4_bounds(long k, Scalar mu, Scalar L,
                                        const std::vector<Scalar>& S_hist) {
  const Scalar S = (k >= 0 && static_cast<std::size_t>(k) < S_hist.size())
                       ? S_hist[static_cast<std::size_t>(k)]
                       : Scalar(0);
  return lemma4_bounds(k, mu, L, S);
}

// Gap bound transported to objective scale:
//   f(x_k) - f* <= lambda_k (f0 - f* + (gamma0/2) R0^2) - (1 - lambda_k) psi_k(x*).
template <class Scalar>
Scalar theorem1_bound(Scalar lambda_k, Scalar f0, Scalar f_star, Scalar gamma0, Scalar R0,
                      Scalar psi_at_xstar) {
  return lambda_k * (f0 - f_star + gamma0 * R0 * R0 / Scalar(2)) -
         (Scalar(1) - lambda_k) * psi_at_xstar;
}

// Relaxed variant with the (nonnegative) psi term dropped; always valid.
template <class Scalar>
Scalar theorem1_bound_relaxed(Scalar lambda_k, Scalar f0, Scalar f_star, Scalar gamma0,
                              Scalar R0) {
  return lambda_k * (f0 - f_star + gamma0 * R0 * R0 / Scalar(2));
}

// ---------------------------------------------------------------------------
// Per-run tracker, fed through the solver's step observer.
// ---------------------------------------------------------------------------
template <class Scalar>
class EstimatingTracker {
 public:
  struct Snapshot {
    long k = 0;
    Scalar alpha = Scalar(0);
    Scalar gamma = Scalar(0);
    Scalar gamma_next = Scalar(0);
    Scalar weighted_sum = Scalar(0);  // S at iteration k
    Scalar lambda = Scalar(1);        // lambda_k
    Scalar phi_star = Scalar(0);      // phi*_k
    Scalar phi_min = Scalar(0);       // Phi*_k
    Scalar f_x = Scalar(0);           // f(x_k)
    Scalar f_y = Scalar(0);
    Scalar grad_norm = Scalar(0);
    Scalar premise_margin = Scalar(0);  // Phi*_k - f(x_k); soft diagnostic
    bool premise_ok = true;
    Scalar psi_at_xstar = std::numeric_limits<Scalar>::quiet_NaN();
    Scalar gamma_identity_error = Scalar(0);  // |gamma_{k+1} - L alpha^2| residual
    Scalar feasibility_excess = Scalar(0);    // max(0, sum beta gamma - min(gamma, mu))
    Scalar clamp_excess = Scalar(0);
  };

  EstimatingTracker(Scalar L, Scalar mu, Scalar f_x0,
                    const GroundTruth<Scalar>* truth = nullptr)
      : L_(L), mu_(mu), phi_star_(f_x0), truth_(truth) {}

  // Binds to StepObserver. The driver stores f(x_k) in state.f_last before
  // stepping; StepInfo carries it through f_x.
  void observe(const StepInfo<Scalar>& info) {
    const Scalar f_x = info.f_x;
    Snapshot snap;
    snap.k = info.k;
    snap.alpha = info.alpha;
    snap.gamma = info.gamma;
    snap.gamma_next = info.gamma_next;
    snap.weighted_sum = info.weighted_sum;
    snap.lambda = lambda_;
    snap.phi_star = phi_star_;
    snap.f_x = f_x;
    snap.f_y = info.f_y;
    snap.grad_norm = info.grad->norm();
    snap.clamp_excess = info.clamp_excess;

    // Model minimum and the soft Lemma-1 premise f(x_k) <= Phi*_k.
    Scalar weighted = Scalar(0);
    VecX<Scalar> slope = info.gamma * *info.v;  // gradient of Phi at the origin, negated
    for (const auto& e : *info.memory) {
      const Scalar w = e.beta * e.gamma;
      if (w == Scalar(0)) continue;
      weighted += w;
      slope -= w * e.v;
    }
    VecX<Scalar> x_phi;
    bool model_bounded = true;
    if (info.gamma - weighted > Scalar(0)) {
      x_phi = phi_argmin(info.gamma, *info.v, *info.memory);
      snap.phi_min = phi_min_value(phi_star_, info.gamma, *info.v, *info.memory, x_phi);
    } else {
      // The feasibility cap allows the quadratic part to cancel exactly
      // (weighted sum == gamma_k, e.g. at kappa = 1 or when gamma_0 = 0).
      // The model is then affine: constant iff its slope vanishes, in which
      // case v_k is as good a minimizer as any; otherwise it has no minimum
      // and the premise cannot hold.
      x_phi = *info.v;
      snap.phi_min = phi_min_value(phi_star_, info.gamma, *info.v, *info.memory, x_phi);
      model_bounded = slope.norm() <= Scalar(1e-10) * (Scalar(1) + info.gamma * info.v->norm());
    }
    snap.premise_margin = snap.phi_min - f_x;
    snap.premise_ok = model_bounded &&
                      f_x <= snap.phi_min + Scalar(1e-8) * (Scalar(1) + std::abs(snap.phi_min));

    if (truth_) snap.psi_at_xstar = eval_psi(*info.memory, truth_->x_star);

    // Algebraic identities at this iteration.
    const Scalar la2 = L_ * info.alpha * info.alpha;
    const Scalar scale = std::max({std::abs(info.gamma_next), std::abs(la2), Scalar(1e-300)});
    // GM keeps gamma = alpha = 0; the identity holds trivially.
    snap.gamma_identity_error =
        (info.gamma_next == Scalar(0) && la2 == Scalar(0))
            ? Scalar(0)
            : std::abs(info.gamma_next - la2) / scale;
    snap.feasibility_excess = std::max(Scalar(0), weighted - std::min(info.gamma, mu_));

    // Advance lambda and phi* to k+1.
    lambda_ = update_lambda(lambda_, info.alpha);
    if (info.alpha > Scalar(0) || info.gamma_next > Scalar(0)) {
      phi_star_ = update_phi_star(phi_star_, info.alpha, info.gamma, info.gamma_next, mu_,
                                  info.f_y, *info.y, *info.grad, *info.v, x_phi, *info.memory);
    }
    history_.push_back(std::move(snap));
  }

  Scalar lambda() const { return lambda_; }
  Scalar phi_star() const { return phi_star_; }
  const std::vector<Snapshot>& history() const { return history_; }

 private:
  Scalar L_;
  Scalar mu_;
  Scalar lambda_ = Scalar(1);
  Scalar phi_star_;
  const GroundTruth<Scalar>* truth_;
  std::vector<Snapshot> history_;
};

}  // namespace sfgm
