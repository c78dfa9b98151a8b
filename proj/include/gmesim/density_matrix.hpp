#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace gmesim {

/// 4x4 operator on the branch basis {L1L2, R1L2, L1R2, R1R2}; index = a + 2b
/// with a (particle 1) and b (particle 2) in {L = 0, R = 1}.
using DensityMatrix4 = Eigen::Matrix4cd;

inline constexpr double kHermitianTolerance = 1e-12;

/// Ascending eigenvalues of a Hermitian matrix (cyclic Jacobi on the real
/// symmetric embedding [[Re, -Im], [Im, Re]]). Deterministic.
std::vector<double> hermitian_eigenvalues(const Eigen::MatrixXcd& h);

/// Largest entrywise |h - h^dagger|.
double hermiticity_defect(const Eigen::MatrixXcd& h);

/// Transpose on tensor factor `subsystem` (1 or 2).
DensityMatrix4 partial_transpose(const DensityMatrix4& rho, int subsystem);

/// Sum of |negative eigenvalues| of the partial transpose. Throws
/// ValidationError if rho is not Hermitian within kHermitianTolerance.
double negativity(const DensityMatrix4& rho, int subsystem = 2);

enum class StateKind { Full, Increment };

struct StateDiagnostics {
  double hermiticity_defect = 0.0;
  double trace_defect = 0.0;  // |tr - 1| for full states, |tr| for increments
  double trace_imag = 0.0;
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

StateDiagnostics validate_state(const DensityMatrix4& rho, StateKind kind);

}  // namespace gmesim
