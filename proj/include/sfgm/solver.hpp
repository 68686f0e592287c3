#pragma once

// Accelerated first-order solver with optional heavy-ball-type memory, plus
// the plain gradient method as a baseline. One iteration of the accelerated
// scheme:
//
//   S      = sum of beta_{i,k} * gamma_i over the memory
//   alpha  = nonnegative root of L*a^2 + (gamma - mu - S)*a - gamma = 0
//   gamma+ = (1 - alpha)*gamma + alpha*(mu + S)          (equals L*alpha^2)
//   y      = (gamma+ x + alpha gamma v + alpha^2 sum beta gamma_i v_i) / (...)
//   x+     = y - grad f(y)/L
//   v+     = ((1-alpha) gamma v + alpha (mu y - grad f(y) + sum beta gamma_i v_i)) / gamma+
//
// The v update is the algebraically cancelled form of the textbook recursion
// (which divides by mu inside and multiplies by mu outside); the cancelled
// form stays finite for arbitrarily small mu.

#include <chrono>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sfgm/errors.hpp"
#include "sfgm/oracle.hpp"
#include "sfgm/schedule.hpp"

namespace sfgm {

enum class Method { GM, FGM_CSS1, FGM_CSS3, SFGM };

enum class StopKind { GradNorm, DistToOpt, MaxIters };

struct StoppingRule {
  StopKind kind = StopKind::MaxIters;
  double threshold = 0.0;  // GradNorm: absolute; DistToOpt: relative to R0
};

template <class Scalar>
struct SolverConfig {
  Method method = Method::SFGM;
  BetaSchedule beta{};
  Scalar gamma0 = Scalar(0);
  Scalar step = Scalar(0);  // gradient-method step h; 0 means 1/L
  StoppingRule stop{};
  long max_iters = 1000;
  Scalar lipschitz_override = Scalar(0);  // 0 means use the oracle's constant
};

// The five benchmarked configurations.
enum class MethodLabel { gm, fgm_css1, fgm_css3, sfgm_memless, sfgm_last };

inline const char* to_string(MethodLabel label) {
  switch (label) {
    case MethodLabel::gm: return "gm";
    case MethodLabel::fgm_css1: return "fgm-css1";
    case MethodLabel::fgm_css3: return "fgm-css3";
    case MethodLabel::sfgm_memless: return "sfgm-memless";
    case MethodLabel::sfgm_last: return "sfgm-last";
  }
  return "?";
}

inline std::optional<MethodLabel> parse_method_label(const std::string& s) {
  if (s == "gm") return MethodLabel::gm;
  if (s == "fgm-css1") return MethodLabel::fgm_css1;
  if (s == "fgm-css3") return MethodLabel::fgm_css3;
  if (s == "sfgm-memless") return MethodLabel::sfgm_memless;
  if (s == "sfgm-last") return MethodLabel::sfgm_last;
  return std::nullopt;
}

template <class Scalar>
SolverConfig<Scalar> preset_config(MethodLabel label, const ObjectiveOracle<Scalar>& oracle) {
  SolverConfig<Scalar> config;
  switch (label) {
    case MethodLabel::gm:
      config.method = Method::GM;
      config.beta.kind = BetaKind::Zero;
      config.gamma0 = Scalar(0);
      break;
    case MethodLabel::fgm_css1:
      config.method = Method::FGM_CSS1;
      config.beta.kind = BetaKind::Zero;
      config.gamma0 = oracle.lipschitz();
      break;
    case MethodLabel::fgm_css3:
      config.method = Method::FGM_CSS3;
      config.beta.kind = BetaKind::Zero;
      config.gamma0 = oracle.strong_convexity();
      break;
    case MethodLabel::sfgm_memless:
      config.method = Method::SFGM;
      config.beta.kind = BetaKind::FirstTerm;
      config.gamma0 = Scalar(0);
      break;
    case MethodLabel::sfgm_last:
      config.method = Method::SFGM;
      config.beta.kind = BetaKind::LastTerm;
      config.gamma0 = Scalar(0);
      break;
  }
  return config;
}

template <class Scalar>
void validate_config(const SolverConfig<Scalar>& config, const ObjectiveOracle<Scalar>& oracle) {
  const Scalar L =
      config.lipschitz_override > Scalar(0) ? config.lipschitz_override : oracle.lipschitz();
  const Scalar mu = oracle.strong_convexity();
  if (L <= Scalar(0)) throw ConfigError("smoothness constant must be positive");
  if (config.max_iters < 0) throw ConfigError("max_iters must be nonnegative");
  if (config.step < Scalar(0)) throw ConfigError("step must be positive (or 0 for 1/L)");
  if (config.stop.kind != StopKind::MaxIters && config.stop.threshold <= 0)
    throw ConfigError("stopping threshold must be positive");
  if (config.beta.kind == BetaKind::Window && config.beta.window < 1)
    throw ConfigError("window schedule requires a positive window size");
  switch (config.method) {
    case Method::GM:
      if (config.gamma0 != Scalar(0) || config.beta.kind != BetaKind::Zero)
        throw ConfigError("gradient method uses gamma0 = 0 and no memory");
      break;
    case Method::FGM_CSS1:
      if (config.beta.kind != BetaKind::Zero || config.gamma0 != L)
        throw ConfigError("CSS1 requires gamma0 = L and an empty schedule");
      break;
    case Method::FGM_CSS3:
      if (config.beta.kind != BetaKind::Zero || config.gamma0 != mu)
        throw ConfigError("CSS3 requires gamma0 = mu and an empty schedule");
      break;
    case Method::SFGM:
      break;
  }
  if (config.method != Method::GM && config.gamma0 == Scalar(0) && mu <= Scalar(0))
    throw ConfigError(
        "gamma0 = 0 with mu = 0 stalls (alpha stays 0); supply a strongly convex "
        "problem or a positive gamma0");
}

template <class Scalar>
struct SolverState {
  long k = 0;
  VecX<Scalar> x;
  VecX<Scalar> v;
  Scalar gamma = Scalar(0);
  Scalar alpha_prev = Scalar(0);
  std::vector<MemoryEntry<Scalar>> memory;
  VecX<Scalar> y_last;
  VecX<Scalar> grad_last;
  Scalar f_last = Scalar(0);
};

// ---------------------------------------------------------------------------
// The scalar recursions, exposed for direct testing.
// ---------------------------------------------------------------------------

// Nonnegative root of L*a^2 + (gamma - mu - S)*a - gamma = 0, clamped to
// [0, 1]. The root never exceeds 1 in exact arithmetic (the polynomial is
// nonnegative at a = 1 because mu + S <= L); clamping only absorbs float
// drift, and any clamp amount is reported through excess.
template <class Scalar>
Scalar compute_alpha(Scalar gamma_k, Scalar S, Scalar mu, Scalar L, Scalar* excess = nullptr) {
  if (excess) *excess = Scalar(0);
  if (gamma_k == Scalar(0) && S == Scalar(0) && mu == Scalar(0))
    throw DegenerateAlpha("gamma, S and mu are all zero; alpha would be 0 forever");
  const Scalar b = mu + S - gamma_k;
  const Scalar disc = std::sqrt(b * b + Scalar(4) * L * gamma_k);
  // Pick the algebraically stable expression for the positive root.
  Scalar alpha = b >= Scalar(0) ? (b + disc) / (Scalar(2) * L)
                                : Scalar(2) * gamma_k / (disc - b);
  if (alpha < Scalar(0)) {
    if (excess) *excess = -alpha;
    alpha = Scalar(0);
  } else if (alpha > Scalar(1)) {
    if (excess) *excess = alpha - Scalar(1);
    alpha = Scalar(1);
  }
  return alpha;
}

template <class Scalar>
Scalar advance_gamma(Scalar gamma_k, Scalar alpha, Scalar S, Scalar mu) {
  return (Scalar(1) - alpha) * gamma_k + alpha * (mu + S);
}

template <class Scalar>
VecX<Scalar> compute_y(const VecX<Scalar>& x, const VecX<Scalar>& v,
                       const std::vector<MemoryEntry<Scalar>>& memory, Scalar gamma_k,
                       Scalar gamma_next, Scalar alpha) {
  Scalar den = gamma_next + alpha * gamma_k;
  VecX<Scalar> num = gamma_next * x + (alpha * gamma_k) * v;
  const Scalar alpha2 = alpha * alpha;
  for (const auto& e : memory) {
    const Scalar w = alpha2 * e.beta * e.gamma;
    if (w == Scalar(0)) continue;
    num += w * e.v;
    den += w;
  }
  if (den <= Scalar(0)) throw DegenerateY("zero denominator in the y average");
  return num / den;
}

template <class Scalar>
VecX<Scalar> gradient_step(const VecX<Scalar>& y, const VecX<Scalar>& grad, Scalar L) {
  return y - grad / L;
}

template <class Scalar>
VecX<Scalar> advance_v(const VecX<Scalar>& v, const VecX<Scalar>& y, const VecX<Scalar>& grad,
                       const std::vector<MemoryEntry<Scalar>>& memory, Scalar gamma_k,
                       Scalar gamma_next, Scalar alpha, Scalar mu) {
  if (gamma_next <= Scalar(0))
    throw DegenerateGamma("gamma_{k+1} must be positive in the v recursion");
  VecX<Scalar> acc = mu * y - grad;
  for (const auto& e : memory) {
    const Scalar w = e.beta * e.gamma;
    if (w != Scalar(0)) acc += w * e.v;
  }
  return (((Scalar(1) - alpha) * gamma_k) * v + alpha * acc) / gamma_next;
}

// ---------------------------------------------------------------------------
// Full iterations
// ---------------------------------------------------------------------------

// Everything one iteration produced, surfaced to observers (certification
// hooks). f_y is only evaluated when an observer is attached, so plain solves
// stay at one gradient and one value evaluation per iteration.
template <class Scalar>
struct StepInfo {
  long k = 0;
  Scalar alpha = Scalar(0);
  Scalar gamma = Scalar(0);       // gamma_k
  Scalar gamma_next = Scalar(0);  // gamma_{k+1}
  Scalar weighted_sum = Scalar(0);  // S = sum beta_i gamma_i
  Scalar f_y = Scalar(0);
  Scalar f_x = Scalar(0);  // mirrors state.f_last; drivers store f(x_k) there first
  Scalar clamp_excess = Scalar(0);
  const VecX<Scalar>* x = nullptr;  // x_k
  const VecX<Scalar>* v = nullptr;  // v_k
  const VecX<Scalar>* y = nullptr;
  const VecX<Scalar>* grad = nullptr;
  const VecX<Scalar>* x_next = nullptr;
  const VecX<Scalar>* v_next = nullptr;
  const std::vector<MemoryEntry<Scalar>>* memory = nullptr;  // weights as used at k
};

template <class Scalar>
using StepObserver = std::function<void(const StepInfo<Scalar>&)>;

namespace detail {

template <class Scalar>
void step_in_place(SolverState<Scalar>& state, const ObjectiveOracle<Scalar>& oracle,
                   const SolverConfig<Scalar>& config, Scalar L, Scalar mu,
                   const StepObserver<Scalar>* observer, Scalar* clamp_excess_out) {
  StepInfo<Scalar> info;
  info.k = state.k;
  info.gamma = state.gamma;

  if (config.method == Method::GM) {
    // Plain gradient descent; the momentum machinery is bypassed entirely
    // and the estimating-sequence variables keep their trivial values
    // (alpha = 0, gamma = 0).
    const Scalar h = config.step > Scalar(0) ? config.step : Scalar(1) / L;
    state.y_last = state.x;
    oracle.gradient(state.x, state.grad_last);
    VecX<Scalar> x_next = state.x - h * state.grad_last;
    if (observer && *observer) {
      info.alpha = Scalar(0);
      info.gamma_next = state.gamma;
      info.weighted_sum = Scalar(0);
      info.f_y = oracle.value(state.y_last);
      info.f_x = state.f_last;
      info.x = &state.x;
      info.v = &state.v;
      info.y = &state.y_last;
      info.grad = &state.grad_last;
      info.x_next = &x_next;
      info.v_next = &state.v;
      info.memory = &state.memory;
      (*observer)(info);
    }
    state.x = std::move(x_next);
    state.alpha_prev = Scalar(0);
    state.k += 1;
    return;
  }

  Scalar schedule_excess = Scalar(0);
  const Scalar S = apply_schedule(config.beta, state.gamma, mu, state.memory, &schedule_excess);
  Scalar alpha_excess = Scalar(0);
  const Scalar alpha = compute_alpha(state.gamma, S, mu, L, &alpha_excess);
  const Scalar gamma_next = advance_gamma(state.gamma, alpha, S, mu);

  VecX<Scalar> y = compute_y(state.x, state.v, state.memory, state.gamma, gamma_next, alpha);
  VecX<Scalar> grad(oracle.dim());
  oracle.gradient(y, grad);
  VecX<Scalar> x_next = gradient_step(y, grad, L);
  VecX<Scalar> v_next =
      advance_v(state.v, y, grad, state.memory, state.gamma, gamma_next, alpha, mu);

  const Scalar excess = schedule_excess + alpha_excess;
  if (clamp_excess_out) *clamp_excess_out = excess;

  if (observer && *observer) {
    info.alpha = alpha;
    info.gamma_next = gamma_next;
    info.weighted_sum = S;
    info.f_y = oracle.value(y);
    info.f_x = state.f_last;
    info.clamp_excess = excess;
    info.x = &state.x;
    info.v = &state.v;
    info.y = &y;
    info.grad = &grad;
    info.x_next = &x_next;
    info.v_next = &v_next;
    info.memory = &state.memory;
    (*observer)(info);
  }

  update_memory(config.beta, state.k, state.gamma, state.v, state.memory);
  state.x = std::move(x_next);
  state.v = std::move(v_next);
  state.gamma = gamma_next;
  state.alpha_prev = alpha;
  state.y_last = std::move(y);
  state.grad_last = std::move(grad);
  state.k += 1;
}

}  // namespace detail

// Single-iteration entry point used by tests; run() below drives the loop.
template <class Scalar>
SolverState<Scalar> step(SolverState<Scalar> state, const ObjectiveOracle<Scalar>& oracle,
                         const SolverConfig<Scalar>& config) {
  validate_config(config, oracle);
  const Scalar L =
      config.lipschitz_override > Scalar(0) ? config.lipschitz_override : oracle.lipschitz();
  detail::step_in_place<Scalar>(state, oracle, config, L, oracle.strong_convexity(), nullptr,
                                nullptr);
  return state;
}

template <class Scalar>
SolverState<Scalar> initial_state(const SolverConfig<Scalar>& config, const VecX<Scalar>& x0) {
  SolverState<Scalar> state;
  state.x = x0;
  state.v = x0;
  state.gamma = config.gamma0;
  if (config.beta.kind == BetaKind::FirstTerm)
    state.memory.push_back({config.gamma0, x0, Scalar(0), 0});
  return state;
}

struct IterationRecord {
  long k = 0;
  double f = 0;
  double gap = std::numeric_limits<double>::quiet_NaN();  // f - f* (needs truth)
  double grad_norm = 0;                                   // |grad f(y_k)|
  double alpha = 0;
  double gamma = 0;
  double lambda = 0;
  double dist_to_opt = std::numeric_limits<double>::quiet_NaN();  // |x_k - x*|
  std::uint64_t wall_ns = 0;
};

template <class Scalar>
struct RunResult {
  SolverState<Scalar> state;
  std::vector<IterationRecord> trace;
  Scalar r0 = Scalar(0);           // |x0 - x*| when truth was given
  Scalar lambda = Scalar(1);       // final lambda_k
  bool stopped_early = false;      // a stopping rule fired before max_iters
  long clamp_warnings = 0;         // iterations with clamp excess > 1e-9
};

// Drives the solver until the stopping rule fires or max_iters is reached.
// Each iteration appends one record; lambda_k = prod_{i<k} (1 - alpha_i) is
// tracked alongside.
//
// Stall detection: a growing objective (beyond 1e-6 relative, 10 times in a
// row) aborts with StallError since it signals an undersized L. Momentum
// methods ripple, though — on ill-conditioned problems the objective rises
// for tens of consecutive iterations (half the oscillation period ~ sqrt(L/mu))
// while converging perfectly well, and such ripples never climb back above
// the starting value f(x0). Requiring f > f(x0) on top of the streak keeps
// the detector specific to actual divergence.
template <class Scalar>
RunResult<Scalar> run(const ObjectiveOracle<Scalar>& oracle, const SolverConfig<Scalar>& config,
                      const VecX<Scalar>& x0, const GroundTruth<Scalar>* truth = nullptr,
                      const StepObserver<Scalar>* observer = nullptr) {
  validate_config(config, oracle);
  if (x0.size() != oracle.dim()) throw DimensionMismatch("x0 has the wrong dimension");
  if (!x0.allFinite()) throw NonFiniteInput("x0 contains NaN or infinity");
  if (config.stop.kind == StopKind::DistToOpt && truth == nullptr)
    throw ConfigError("distance-based stopping requires ground truth");

  const Scalar L =
      config.lipschitz_override > Scalar(0) ? config.lipschitz_override : oracle.lipschitz();
  const Scalar mu = oracle.strong_convexity();

  RunResult<Scalar> result;
  result.state = initial_state(config, x0);
  if (truth) result.r0 = (x0 - truth->x_star).norm();
  result.trace.reserve(static_cast<std::size_t>(std::min<long>(config.max_iters, 1 << 20)));

  Scalar lambda = Scalar(1);
  Scalar f0 = Scalar(0);
  Scalar f_prev = std::numeric_limits<Scalar>::infinity();
  int stall_streak = 0;

  for (long k = 0; k < config.max_iters; ++k) {
    const auto tick = std::chrono::steady_clock::now();
    const Scalar f_k = oracle.value(result.state.x);
    result.state.f_last = f_k;
    if (k == 0) f0 = f_k;

    if (f_k - f_prev > Scalar(1e-6) * (Scalar(1) + std::abs(f_prev))) {
      if (++stall_streak >= 10 && f_k > f0)
        throw StallError("objective increased for 10 consecutive iterations at k=" +
                             std::to_string(k) + " (f=" + std::to_string(double(f_k)) +
                             " above the starting value); the configured smoothness "
                             "constant is likely too small",
                         k);
    } else {
      stall_streak = 0;
    }
    f_prev = f_k;

    IterationRecord rec;
    rec.k = k;
    rec.f = static_cast<double>(f_k);
    rec.gamma = static_cast<double>(result.state.gamma);
    rec.lambda = static_cast<double>(lambda);
    if (truth) {
      rec.gap = static_cast<double>(f_k - truth->f_star);
      rec.dist_to_opt = static_cast<double>((result.state.x - truth->x_star).norm());
    }

    Scalar clamp_excess = Scalar(0);
    detail::step_in_place<Scalar>(result.state, oracle, config, L, mu, observer, &clamp_excess);
    if (clamp_excess > Scalar(1e-9)) result.clamp_warnings += 1;

    rec.alpha = static_cast<double>(result.state.alpha_prev);
    rec.grad_norm = static_cast<double>(result.state.grad_last.norm());
    rec.wall_ns = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() -
                                                             tick)
            .count());
    result.trace.push_back(rec);

    lambda *= Scalar(1) - result.state.alpha_prev;

    if (config.stop.kind == StopKind::GradNorm &&
        rec.grad_norm <= config.stop.threshold) {
      result.stopped_early = true;
      break;
    }
    if (config.stop.kind == StopKind::DistToOpt &&
        rec.dist_to_opt <= config.stop.threshold * static_cast<double>(result.r0)) {
      result.stopped_early = true;
      break;
    }
  }

  result.lambda = lambda;
  return result;
}

}  // namespace sfgm
