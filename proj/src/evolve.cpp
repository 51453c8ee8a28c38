#include "adiaprep/evolve.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace adiaprep {

namespace {

// exp(-i w H dt) from a cached eigensystem of H.
ComplexMatrix scaled_propagator(const HermitianOperator& h, double weight, double dt) {
  return expm_minus_i(h.eigensystem(), weight * dt);
}

void require_dim(const StateVector& v, std::size_t dim) {
  if (v.dim() != dim) {
    throw EvolveError("state dimension " + std::to_string(v.dim()) + " does not match operator dimension " +
                      std::to_string(dim));
  }
}

double step_midpoint(const AdiabaticSchedule& schedule, double t_start) {
  const double dt = schedule.effective_step();
  const double slack = 1e-9;
  if (t_start < -slack || t_start + dt > schedule.total_time() + slack) {
    std::ostringstream msg;
    msg << "step [" << t_start << ", " << t_start + dt << "] exceeds schedule end T = "
        << schedule.total_time();
    throw EvolveError(msg.str());
  }
  return std::min(t_start + 0.5 * dt, schedule.total_time());
}

}  // namespace

Integrator parse_integrator(std::string_view name) {
  if (name == "trotter2") return Integrator::trotter2;
  if (name == "exact-midpoint") return Integrator::exact_midpoint;
  throw EvolveError("unknown integrator '" + std::string(name) + "' (expected trotter2 or exact-midpoint)");
}

std::string to_string(Integrator integrator) {
  return integrator == Integrator::trotter2 ? "trotter2" : "exact-midpoint";
}

SplitOrder parse_split_order(std::string_view name) {
  if (name == "initial-outside") return SplitOrder::initial_outside;
  if (name == "target-outside") return SplitOrder::target_outside;
  throw EvolveError("unknown split order '" + std::string(name) +
                    "' (expected initial-outside or target-outside)");
}

std::string to_string(SplitOrder order) {
  return order == SplitOrder::initial_outside ? "initial-outside" : "target-outside";
}

StateVector evolve_exact(const StateVector& v, const HermitianOperator& h, double t) {
  require_dim(v, h.dim());
  if (t == 0.0) return v;
  return StateVector(adiaprep::apply(expm_minus_i(h.eigensystem(), t), v.amplitudes()));
}

StateVector split_step(const StateVector& v, const ModelSpec& spec, double s, double dt,
                       SplitOrder order) {
  require_dim(v, spec.dim());
  if (!(s >= 0.0 && s <= 1.0)) throw EvolveError("interpolation parameter s must lie in [0, 1]");
  const bool initial_out = order == SplitOrder::initial_outside;
  const HermitianOperator& outer = initial_out ? spec.initial : spec.target;
  const HermitianOperator& inner_op = initial_out ? spec.target : spec.initial;
  const double w_outer = initial_out ? 1.0 - s : s;
  const double w_inner = initial_out ? s : 1.0 - s;

  const ComplexMatrix half = scaled_propagator(outer, w_outer, 0.5 * dt);
  const ComplexMatrix full = scaled_propagator(inner_op, w_inner, dt);
  ComplexVector amps = adiaprep::apply(half, v.amplitudes());
  amps = adiaprep::apply(full, amps);
  amps = adiaprep::apply(half, amps);
  return StateVector(std::move(amps));
}

StateVector trotter2_step(const StateVector& v, const ModelSpec& spec,
                          const AdiabaticSchedule& schedule, double t_start, SplitOrder order) {
  const double t_mid = step_midpoint(schedule, t_start);
  return split_step(v, spec, schedule.s(t_mid), schedule.effective_step(), order);
}

StateVector exact_midpoint_step(const StateVector& v, const ModelSpec& spec,
                                const AdiabaticSchedule& schedule, double t_start) {
  const double t_mid = step_midpoint(schedule, t_start);
  return evolve_exact(v, interpolate(spec, schedule.s(t_mid)), schedule.effective_step());
}

StateVector initial_ground_state(const ModelSpec& spec) {
  return StateVector::normalized(spec.initial.eigensystem().eigenvector(0));
}

StateVector run_adiabatic(const ModelSpec& spec, const AdiabaticSchedule& schedule,
                          Integrator integrator, SplitOrder order) {
  StateVector v = initial_ground_state(spec);
  const double dt = schedule.effective_step();
  const std::size_t n = schedule.num_steps();
  for (std::size_t k = 0; k < n; ++k) {
    const double t_start = static_cast<double>(k) * dt;
    v = integrator == Integrator::trotter2 ? trotter2_step(v, spec, schedule, t_start, order)
                                           : exact_midpoint_step(v, spec, schedule, t_start);
  }
  return v;
}

ResidualDecomposition decompose(const StateVector& v, const ModelSpec& spec) {
  require_dim(v, spec.dim());
  const auto g = spec.reference_ground_state.amplitudes();
  const auto e = spec.reference_excited_state.amplitudes();
  const Complex alpha = inner(g, v.amplitudes());
  const Complex beta = inner(e, v.amplitudes());

  ComplexVector rest(v.amplitudes().begin(), v.amplitudes().end());
  for (std::size_t i = 0; i < rest.size(); ++i) rest[i] -= alpha * g[i] + beta * e[i];
  const double residual = norm(rest);
  if (residual >= kProjectionResidualLimit) {
    std::ostringstream msg;
    msg << "state left the two-level subspace: projection residual " << residual << " >= "
        << kProjectionResidualLimit;
    throw EvolveError(msg.str());
  }

  ResidualDecomposition out;
  out.alpha_mod = std::min(1.0, std::abs(alpha));
  out.beta_mod = std::min(1.0, std::abs(beta));
  out.beta_sq = out.beta_mod * out.beta_mod;
  out.projection_residual = residual;
  const Complex cross = alpha * std::conj(beta);
  out.theta_defined = std::abs(cross) > 1e-15;
  if (out.theta_defined) {
    out.theta = std::arg(cross);
    if (out.theta <= -std::numbers::pi) out.theta = std::numbers::pi;
  }
  return out;
}

StateVector superpose(double alpha_mod, double beta_mod, double theta, const ModelSpec& spec) {
  const auto g = spec.reference_ground_state.amplitudes();
  const auto e = spec.reference_excited_state.amplitudes();
  const Complex beta = std::polar(beta_mod, -theta);
  ComplexVector amps(g.size());
  for (std::size_t i = 0; i < amps.size(); ++i) amps[i] = alpha_mod * g[i] + beta * e[i];
  return StateVector(std::move(amps));
}

}  // namespace adiaprep
