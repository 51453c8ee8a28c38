// Time evolution: exact propagation under a constant Hamiltonian, symmetric
// second-order splitting of the interpolated Hamiltonian, the full adiabatic
// preparation, and the two-level decomposition of the prepared state.
#pragma once

#include <string>
#include <string_view>

#include "adiaprep/model.hpp"
#include "adiaprep/state_vector.hpp"

namespace adiaprep {

class EvolveError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Integrator { trotter2, exact_midpoint };

/// Which factor sits on the outside of the symmetric product.
/// initial_outside: exp(-iA dt/2) exp(-iB dt) exp(-iA dt/2) with A = (1-s) H0, B = s HT.
enum class SplitOrder { initial_outside, target_outside };

Integrator parse_integrator(std::string_view name);
std::string to_string(Integrator integrator);
SplitOrder parse_split_order(std::string_view name);
std::string to_string(SplitOrder order);

/// exp(-i h t) |v>.
StateVector evolve_exact(const StateVector& v, const HermitianOperator& h, double t);

/// One symmetric split step of width dt at fixed interpolation parameter s.
StateVector split_step(const StateVector& v, const ModelSpec& spec, double s, double dt,
                       SplitOrder order = SplitOrder::initial_outside);

/// One second-order step over [t_start, t_start + dt] with s evaluated at the midpoint.
/// dt is the schedule's effective step. Throws EvolveError past the schedule end.
StateVector trotter2_step(const StateVector& v, const ModelSpec& spec,
                          const AdiabaticSchedule& schedule, double t_start,
                          SplitOrder order = SplitOrder::initial_outside);

/// exp(-i H_A(s_mid) dt) |v>: piecewise-constant midpoint reference step.
StateVector exact_midpoint_step(const StateVector& v, const ModelSpec& spec,
                                const AdiabaticSchedule& schedule, double t_start);

/// Ground state of H0 via eig_hermitian.
StateVector initial_ground_state(const ModelSpec& spec);

/// Prepares |psi(T)> starting from the ground state of H0.
StateVector run_adiabatic(const ModelSpec& spec, const AdiabaticSchedule& schedule,
                          Integrator integrator = Integrator::trotter2,
                          SplitOrder order = SplitOrder::initial_outside);

/// |psi> = alpha |g> + beta |e> with theta = arg(alpha conj(beta)).
struct ResidualDecomposition {
  double alpha_mod = 1.0;
  double beta_mod = 0.0;
  double theta = 0.0;
  double beta_sq = 0.0;
  /// False when alpha*beta vanishes and theta carries no information (reported as 0).
  bool theta_defined = false;
  /// ||v - alpha g - beta e||.
  double projection_residual = 0.0;
};

inline constexpr double kProjectionResidualLimit = 1e-6;

/// Throws EvolveError when the state has left span{g, e}.
ResidualDecomposition decompose(const StateVector& v, const ModelSpec& spec);

/// Inverse of decompose: alpha_mod |g> + beta_mod e^{-i theta} |e>.
StateVector superpose(double alpha_mod, double beta_mod, double theta, const ModelSpec& spec);

}  // namespace adiaprep
