#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "subdyn/dill.hpp"
#include "subdyn/spectra.hpp"

namespace subdyn {

/// canonicalize(ρ⁻¹ ∘ φ ∘ τ).
DillTable conjugate_step(const DillTable& rho_inv, const DillTable& phi, const DillTable& tau);

/// FNV-1a over the serialized canonical table.
std::uint32_t table_hash(const DillTable& d);

struct TrajectoryStep {
  DillTable table;
  InvariantReport report;
  std::uint32_t hash = 0;
};

struct Cycle {
  std::size_t entry = 0;
  std::size_t period = 0;
};

struct TrajectoryOptions {
  std::size_t max_steps = 40;
  std::size_t horizon = 2048;        // for the per-step invariant reports
  std::size_t max_radius = 16;       // recognizer search for ρ
  std::size_t coverage_factor = 4;
};

struct Trajectory {
  std::vector<TrajectoryStep> steps;  // steps[0] is the input map
  std::optional<Cycle> cycle;
  DillTable tau;
  DillTable rho_inv;
  double lambda = 0;
  /// Eventual bound on I(Φ_i) from the composition estimates, iterated to its fixed point.
  double in_radius_ceiling = 0;
};

/// Φ_{i+1} = ρ⁻¹ ∘ Φ_i ∘ τ until a canonical table repeats or max_steps is reached.
/// Throws precondition when τ and ρ do not share their Perron root.
Trajectory trajectory(const DillTable& f, const LanguagePtr& tau, const LanguagePtr& rho,
                      const TrajectoryOptions& options = {});

enum class ShiftSide { left, right };  // left: f = σᵏ ∘ g;  right: g = σᵏ ∘ f

struct Representative {
  DillTable g;
  std::size_t k = 0;
  ShiftSide side = ShiftSide::left;
};

/// A cycle element g with f = σᵏ ∘ g or g = σᵏ ∘ f, checked as exact table equality.
/// Throws undecided when no cycle element qualifies within shift_bound.
Representative reduce_to_representative(const Trajectory& t, std::size_t prefix_len = 512,
                                         std::size_t shift_bound = 32);

/// Least eventual bound b / (1 − a) of x_{i+1} ≤ a x_i + b; argument error unless 0 ≤ a < 1.
double alpha_bound(double a, double b);

}  // namespace subdyn
