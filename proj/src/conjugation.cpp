#include "subdyn/conjugation.hpp"

#include <cmath>
#include <limits>
#include <map>

#include "subdyn/error.hpp"

namespace subdyn {

DillTable conjugate_step(const DillTable& rho_inv, const DillTable& phi, const DillTable& tau) {
  return canonicalize(compose(rho_inv, compose(phi, tau)));
}

std::uint32_t table_hash(const DillTable& d) {
  std::uint32_t h = 2166136261u;
  auto mix = [&h](std::uint32_t v) {
    for (int byte = 0; byte < 4; ++byte) {
      h ^= (v >> (8 * byte)) & 0xffu;
      h *= 16777619u;
    }
  };
  mix(static_cast<std::uint32_t>(d.in_radius()));
  for (const auto& [w, out] : d.table()) {
    for (Letter a : w) mix(a);
    mix(0xfffeu);
    for (Letter a : out) mix(a);
    mix(0xffffu);
  }
  return h;
}

double alpha_bound(double a, double b) {
  if (!(a >= 0 && a < 1)) fail(ErrorKind::argument, "alpha_bound needs 0 <= a < 1");
  return b / (1 - a);
}

Trajectory trajectory(const DillTable& f, const LanguagePtr& tau, const LanguagePtr& rho,
                      const TrajectoryOptions& options) {
  if (!same_language(f.domain(), tau) || !same_language(f.target(), rho)) {
    fail(ErrorKind::argument, "trajectory: the map must go from X_tau to X_rho");
  }
  const CountMatrix mt = associated_matrix(tau->substitution());
  const CountMatrix mr = associated_matrix(rho->substitution());
  const EigenvalueMatch match = same_dominant_eigenvalue(mt, mr);
  if (!match.equal) fail(ErrorKind::precondition, "tau and rho have different dominant eigenvalues");
  const EigenvalueEstimate lambda = dominant_eigenvalue(mt);
  if (lambda.upper <= 1) fail(ErrorKind::precondition, "dominant eigenvalue must exceed 1");

  const Recognizer rec = build_recognizer(rho, options.max_radius, options.coverage_factor);
  Trajectory t{{}, std::nullopt, from_substitution(tau), almost_inverse(rec), lambda.midpoint(), 0};
  const InvariantReport tau_report = invariants(t.tau, options.horizon);

  std::multimap<std::uint32_t, std::size_t> seen;
  DillTable current = canonicalize(f);
  double d_max = 0;
  for (std::size_t i = 0;; ++i) {
    TrajectoryStep step{current, invariants(current, options.horizon), table_hash(current)};
    d_max = std::max(d_max, step.report.d_observed);
    auto [lo, hi] = seen.equal_range(step.hash);
    for (auto it = lo; it != hi; ++it) {
      if (t.steps[it->second].table == current) {
        t.cycle = Cycle{it->second, i - it->second};
        break;
      }
    }
    if (t.cycle) break;
    seen.emplace(step.hash, i);
    t.steps.push_back(std::move(step));
    if (i == options.max_steps) break;
    current = conjugate_step(t.rho_inv, current, t.tau);
  }

  // I(Φ∘τ) ≤ (2D(τ) + I(Φ))/λ + 1 and I(ρ⁻¹∘Ψ) ≤ (2D(Ψ) + I(ρ⁻¹))/λ + I(Ψ) + 1 with
  // D(Ψ) ≤ D(τ) + D(Φ): a recurrence I' ≤ I/λ + b.
  const double a = 1 / t.lambda;
  const double b = (4 * tau_report.d_observed + 2 * d_max + static_cast<double>(t.rho_inv.in_radius())) / t.lambda + 2;
  t.in_radius_ceiling = a < 1 ? alpha_bound(a, b) : std::numeric_limits<double>::infinity();
  return t;
}

Representative reduce_to_representative(const Trajectory& t, std::size_t prefix_len, std::size_t shift_bound) {
  if (!t.cycle) fail(ErrorKind::precondition, "trajectory has no cycle");
  const DillTable& f = t.steps.front().table;
  for (std::size_t e = t.cycle->entry; e < t.cycle->entry + t.cycle->period; ++e) {
    const DillTable& g = t.steps[e].table;
    auto shifts = almost_equivalent(f, g, prefix_len, shift_bound);
    if (!shifts) continue;
    const auto [i, j] = *shifts;
    // σⁱ f(x) = σʲ g(x): f = σ^{j−i} ∘ g when j ≥ i, otherwise g = σ^{i−j} ∘ f.
    if (j >= i) {
      if (canonicalize(shift_after(g, j - i)) == f) return {g, j - i, ShiftSide::left};
    } else if (canonicalize(shift_after(f, i - j)) == g) {
      return {g, i - j, ShiftSide::right};
    }
  }
  fail(ErrorKind::undecided, "no cycle element is almost equivalent to the input within shift bound " +
                                 std::to_string(shift_bound) + "; raise --shift-bound");
}

}  // namespace subdyn
