#pragma once

// Memory-weight schedules for the accelerated solver. Earlier iterations
// leave behind pairs (gamma_i, v_i); a schedule decides which pairs are kept
// and with what weight beta_{i,k} they enter iteration k. Feasibility
// requires sum_i beta_{i,k} * gamma_i <= min(gamma_k, mu).

#include <algorithm>
#include <vector>

#include "sfgm/errors.hpp"
#include "sfgm/oracle.hpp"

namespace sfgm {

enum class BetaKind {
  Zero,       // no memory: plain fast-gradient behaviour
  FirstTerm,  // keep (gamma_0, v_0) with weight 1 forever
  LastTerm,   // keep only (gamma_{k-1}, v_{k-1}) with weight min(1, mu/gamma_{k-1})
  Window,     // keep the last w pairs with a uniform feasibility-scaled weight
};

struct BetaSchedule {
  BetaKind kind = BetaKind::Zero;
  bool clamp = true;  // rescale weights onto the feasible set when drift occurs
  int window = 0;     // used by Window only
};

template <class Scalar>
struct MemoryEntry {
  Scalar gamma;      // gamma_i
  VecX<Scalar> v;    // v_i
  Scalar beta;       // beta_{i,k} for the current iteration
  long origin;       // the iteration i that produced this pair
};

// Assigns this iteration's weights to the stored entries and returns
// S = sum beta_i * gamma_i. When the raw weighted sum exceeds the feasible
// cap min(gamma_k, mu), weights are scaled down (if clamp is set) and the
// overshoot is reported through excess so callers can surface a diagnostic.
template <class Scalar>
Scalar apply_schedule(const BetaSchedule& schedule, Scalar gamma_k, Scalar mu,
                      std::vector<MemoryEntry<Scalar>>& memory,
                      Scalar* excess = nullptr) {
  if (excess) *excess = Scalar(0);
  if (memory.empty()) return Scalar(0);

  const Scalar cap = std::min(gamma_k, mu);
  switch (schedule.kind) {
    case BetaKind::Zero:
      for (auto& e : memory) e.beta = Scalar(0);
      return Scalar(0);
    case BetaKind::FirstTerm:
      for (auto& e : memory) e.beta = Scalar(1);
      break;
    case BetaKind::LastTerm: {
      auto& e = memory.back();
      e.beta = e.gamma > Scalar(0) ? std::min(Scalar(1), mu / e.gamma) : Scalar(1);
      break;
    }
    case BetaKind::Window: {
      Scalar total = Scalar(0);
      for (const auto& e : memory) total += e.gamma;
      const Scalar beta =
          total > Scalar(0) ? std::min(Scalar(1), cap / total) : Scalar(1);
      for (auto& e : memory) e.beta = beta;
      break;
    }
  }

  Scalar weighted = Scalar(0);
  for (const auto& e : memory) weighted += e.beta * e.gamma;
  if (weighted > cap) {
    if (excess) *excess = weighted - cap;
    if (schedule.clamp && weighted > Scalar(0)) {
      const Scalar scale = cap / weighted;
      for (auto& e : memory) e.beta *= scale;
      weighted = cap;
    }
  }
  return weighted;
}

// Records the pair (gamma_k, v_k) that iteration k leaves behind, according
// to what the schedule will need at iteration k+1.
template <class Scalar>
void update_memory(const BetaSchedule& schedule, long k, Scalar gamma_k,
                   const VecX<Scalar>& v_k, std::vector<MemoryEntry<Scalar>>& memory) {
  switch (schedule.kind) {
    case BetaKind::Zero:
    case BetaKind::FirstTerm:
      return;  // Zero keeps nothing; FirstTerm keeps only the seed pair
    case BetaKind::LastTerm:
      memory.clear();
      memory.push_back({gamma_k, v_k, Scalar(0), k});
      return;
    case BetaKind::Window:
      memory.push_back({gamma_k, v_k, Scalar(0), k});
      while (memory.size() > static_cast<std::size_t>(std::max(schedule.window, 1)))
        memory.erase(memory.begin());
      return;
  }
}

}  // namespace sfgm
