#include "gmesim/density_matrix.hpp"

#include "gmesim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gmesim {

namespace {

// Cyclic Jacobi eigenvalues of a real symmetric matrix (overwritten).
std::vector<double> symmetric_jacobi(Eigen::MatrixXd a) {
  const Eigen::Index n = a.rows();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    }
    if (off == 0.0) break;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
      }
    }
    // Stop once off-diagonal mass is negligible against the diagonal.
    double diag = 0.0, rest = 0.0;
    for (Eigen::Index p = 0; p < n; ++p) {
      diag += a(p, p) * a(p, p);
      for (Eigen::Index q = p + 1; q < n; ++q) rest += a(p, q) * a(p, q);
    }
    if (rest <= 1e-64 * diag) break;
  }
  std::vector<double> ev(n);
  for (Eigen::Index i = 0; i < n; ++i) ev[i] = a(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

}  // namespace

std::vector<double> hermitian_eigenvalues(const Eigen::MatrixXcd& h) {
  const Eigen::Index n = h.rows();
  if (h.cols() != n) throw ValidationError("hermitian_eigenvalues: matrix must be square");
  // Symmetrize first so rounding-level anti-Hermitian parts do not leak in.
  const Eigen::MatrixXcd s = 0.5 * (h + h.adjoint());
  Eigen::MatrixXd m(2 * n, 2 * n);
  m.topLeftCorner(n, n) = s.real();
  m.bottomRightCorner(n, n) = s.real();
  m.topRightCorner(n, n) = -s.imag();
  m.bottomLeftCorner(n, n) = s.imag();
  const std::vector<double> doubled = symmetric_jacobi(m);
  std::vector<double> ev(n);
  for (Eigen::Index i = 0; i < n; ++i) ev[i] = 0.5 * (doubled[2 * i] + doubled[2 * i + 1]);
  return ev;
}

double hermiticity_defect(const Eigen::MatrixXcd& h) {
  return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

DensityMatrix4 partial_transpose(const DensityMatrix4& rho, int subsystem) {
  if (subsystem != 1 && subsystem != 2) throw ValidationError("partial_transpose: subsystem must be 1 or 2");
  DensityMatrix4 out;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      for (int ap = 0; ap < 2; ++ap) {
        for (int bp = 0; bp < 2; ++bp) {
          const int row = a + 2 * b, col = ap + 2 * bp;
          if (subsystem == 1) out(row, col) = rho(ap + 2 * b, a + 2 * bp);
          else out(row, col) = rho(a + 2 * bp, ap + 2 * b);
        }
      }
    }
  }
  return out;
}

double negativity(const DensityMatrix4& rho, int subsystem) {
  const double defect = hermiticity_defect(rho);
  if (defect > kHermitianTolerance) {
    std::ostringstream os;
    os << "negativity: input not Hermitian (defect " << defect << ")";
    throw ValidationError(os.str());
  }
  double n = 0.0;
  for (double ev : hermitian_eigenvalues(partial_transpose(rho, subsystem))) {
    if (ev < 0.0) n -= ev;
  }
  return n;
}

StateDiagnostics validate_state(const DensityMatrix4& rho, StateKind kind) {
  StateDiagnostics d;
  d.hermiticity_defect = hermiticity_defect(rho);
  const std::complex<double> tr = rho.trace();
  d.trace_imag = std::abs(tr.imag());
  const auto ev = hermitian_eigenvalues(rho);
  d.min_eigenvalue = ev.front();
  d.max_eigenvalue = ev.back();
  auto flag = [&](const std::string& what, double value) {
    std::ostringstream os;
    os << what << " " << value;
    d.violations.push_back(os.str());
  };
  if (kind == StateKind::Full) {
    d.trace_defect = std::abs(tr - 1.0);
    if (d.hermiticity_defect > 1e-12) flag("hermiticity defect", d.hermiticity_defect);
    if (d.trace_defect > 1e-12) flag("trace defect", d.trace_defect);
    if (d.min_eigenvalue < -1e-10) flag("negative eigenvalue", d.min_eigenvalue);
    if (d.max_eigenvalue > 1.0 + 1e-10) flag("eigenvalue above 1", d.max_eigenvalue);
  } else {
    d.trace_defect = std::abs(tr);
    if (d.hermiticity_defect > 1e-14) flag("hermiticity defect", d.hermiticity_defect);
    if (d.trace_defect > 1e-14) flag("trace defect", d.trace_defect);
  }
  return d;
}

}  // namespace gmesim
