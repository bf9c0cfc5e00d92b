#include "qspeed/trajectory.hpp"

#include <cmath>

#include "qspeed/errors.hpp"

namespace qspeed {

Trajectory Trajectory::without_derivative() const {
  Trajectory copy = *this;
  copy.derivative_at = nullptr;
  return copy;
}

Trajectory conjugated(const Trajectory& traj, const ComplexMatrix& unitary) {
  if (unitary.dim() != traj.dim) throw InvalidArgument("conjugated: dimension mismatch");
  Trajectory out = traj;
  const ComplexMatrix u = unitary;
  const ComplexMatrix u_dag = unitary.adjoint();
  out.state_at = [state = traj.state_at, u, u_dag](double t) { return u * state(t) * u_dag; };
  if (traj.derivative_at)
    out.derivative_at = [deriv = traj.derivative_at, u, u_dag](double t) {
      return u * deriv(t) * u_dag;
    };
  return out;
}

Trajectory stationary_trajectory(const ComplexMatrix& rho, double horizon) {
  Trajectory traj;
  traj.dim = rho.dim();
  traj.horizon = horizon;
  traj.state_at = [rho](double) { return rho; };
  traj.derivative_at = [n = rho.dim()](double) { return ComplexMatrix(n); };
  return traj;
}

DensityCheck check_density(const ComplexMatrix& rho, double tol) {
  DensityCheck check{hermitian_check(rho, tol), std::abs(rho.trace() - 1.0), 0.0};
  if (check.hermitian) check.min_eigenvalue = eigh(rho, tol).eigenvalues.front();
  else check.min_eigenvalue = -INFINITY;
  return check;
}

}  // namespace qspeed
