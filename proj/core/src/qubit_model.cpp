#include "cpb/qubit_model.hpp"

#include <cmath>

#include "cpb/constants.hpp"

namespace cpb {

void QubitParams::validate() const {
  if (ec_over_h <= 0 || ej_over_h <= 0)
    throw ValidationError("QubitParams: energies must be positive");
  if (n_charge_max - n_charge_min < 1)
    throw ValidationError("QubitParams: need at least two charge states");
}

void ResonatorParams::validate() const {
  if (f_r <= 0 || q_total <= 0)
    throw ValidationError("ResonatorParams: f_r and q_total must be positive");
  if (n_fock < 2) throw ValidationError("ResonatorParams: n_fock must be >= 2");
}

void CouplingGeometry::validate() const {
  if (c_coupler <= 0 || c_sigma <= 0 || c_gate <= 0 ||
      resonator_length <= 0 || cap_per_length <= 0)
    throw ValidationError("CouplingGeometry: all fields must be positive");
  if (c_coupler >= c_sigma)
    throw ValidationError("CouplingGeometry: c_coupler must be < c_sigma");
}

Eigen::MatrixXd build_charge_hamiltonian(const QubitParams& q, GateCharge g) {
  q.validate();
  const int n = q.n_states();
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const double charge = q.n_charge_min + i;
    h(i, i) = 4.0 * q.ec_over_h * (charge - g.ng) * (charge - g.ng);
    if (i + 1 < n) {
      h(i, i + 1) = -0.5 * q.ej_over_h;
      h(i + 1, i) = -0.5 * q.ej_over_h;
    }
  }
  return h;
}

double qubit_frequency(const QubitParams& q, GateCharge g) {
  const double eps = 4.0 * q.ec_over_h * (1.0 - 2.0 * g.ng);
  return std::hypot(eps, q.ej_over_h);
}

GateCharge gate_charge_for_frequency(const QubitParams& q, double f_target,
                                     NgBranch branch) {
  if (f_target < q.ej_over_h)
    throw TargetBelowMinimum(
        "target frequency is below the E_J/h qubit frequency floor");
  const double s =
      std::sqrt(f_target * f_target - q.ej_over_h * q.ej_over_h) /
      (4.0 * q.ec_over_h);
  const double ng =
      branch == NgBranch::below_half ? 0.5 * (1.0 - s) : 0.5 * (1.0 + s);
  return GateCharge{ng};
}

double mixing_angle(const QubitParams& q, GateCharge g) {
  return std::atan2(q.ej_over_h, 4.0 * q.ec_over_h * (1.0 - 2.0 * g.ng));
}

double bare_coupling(const CouplingGeometry& geom, double f_r) {
  geom.validate();
  using namespace constants;
  const double zpf =
      std::sqrt(planck * f_r / (geom.resonator_length * geom.cap_per_length));
  const double energy = elementary_charge * (geom.c_coupler / geom.c_sigma) * zpf;
  return energy / planck;  // Hz
}

namespace {

Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Eigen::MatrixXd kron3(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                      const Eigen::MatrixXd& c) {
  return kron(kron(a, b), c);
}

Eigen::MatrixXd fock_number(int n) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = i;
  return m;
}

Eigen::MatrixXd fock_position(int n) {
  // a + a^dagger
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) {
    m(i, i + 1) = std::sqrt(i + 1.0);
    m(i + 1, i) = std::sqrt(i + 1.0);
  }
  return m;
}

Eigen::MatrixXd fock_lower(int n) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) m(i, i + 1) = std::sqrt(i + 1.0);
  return m;
}

}  // namespace

Eigen::MatrixXd build_full_hamiltonian(const QubitParams& q,
                                       const ResonatorParams& res_c,
                                       const ResonatorParams& res_h,
                                       GateCharge g, double g_tilde,
                                       int dim_cap) {
  q.validate();
  res_c.validate();
  res_h.validate();
  const int nc = res_c.n_fock, nh = res_h.n_fock;
  const long dim = 2L * nc * nh;
  if (dim > dim_cap)
    throw DimensionOverflow("joint Hilbert-space dimension " +
                            std::to_string(dim) + " exceeds cap " +
                            std::to_string(dim_cap));

  const double fq = qubit_frequency(q, g);
  const double theta = mixing_angle(q, g);

  // Qubit basis (ground, excited). The charge operator expressed in the
  // energy eigenbasis carries the mixing-angle structure; the sign convention
  // here puts sigma^z = +1 on the excited state, which is the one that makes
  // the drift term in the Bloch equations relax toward the ground state.
  Eigen::MatrixXd hq(2, 2);
  hq << 0.0, 0.0, 0.0, fq;
  Eigen::MatrixXd coupling_op(2, 2);  // 1 - 2N_g - cos(t) s^z + sin(t) s^x
  const double offset = 1.0 - 2.0 * g.ng;
  coupling_op << offset + std::cos(theta), std::sin(theta),
                 std::sin(theta), offset - std::cos(theta);

  const Eigen::MatrixXd i2 = Eigen::MatrixXd::Identity(2, 2);
  const Eigen::MatrixXd ic = Eigen::MatrixXd::Identity(nc, nc);
  const Eigen::MatrixXd ih = Eigen::MatrixXd::Identity(nh, nh);

  Eigen::MatrixXd h = kron3(hq, ic, ih);
  h += res_c.f_r * kron3(i2, fock_number(nc), ih);
  h += res_h.f_r * kron3(i2, ic, fock_number(nh));
  h += res_c.g0_over_2pi * kron3(coupling_op, fock_position(nc), ih);
  h += res_h.g0_over_2pi * kron3(coupling_op, ic, fock_position(nh));
  if (g_tilde != 0.0) {
    const Eigen::MatrixXd ac = fock_lower(nc);
    const Eigen::MatrixXd ah = fock_lower(nh);
    Eigen::MatrixXd exchange =
        kron3(i2, ac.transpose(), ah) + kron3(i2, ac, ah.transpose());
    h += g_tilde * exchange;
  }
  return h;
}

EigenSystem eigensolve_hermitian(const Eigen::MatrixXd& m) {
  if ((m - m.transpose()).norm() > 1e-9 * std::max(1.0, m.norm()))
    throw ValidationError("eigensolve_hermitian: matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success)
    throw ConvergenceFailure("eigensolve_hermitian: solver did not converge");
  return EigenSystem{solver.eigenvalues(), solver.eigenvectors()};
}

Spectrum charge_spectrum(const QubitParams& q, GateCharge g, int levels) {
  const EigenSystem es = eigensolve_hermitian(build_charge_hamiltonian(q, g));
  Spectrum s;
  const int n = std::min<int>(levels, es.eigenvalues.size());
  s.eigenvalues.reserve(n);
  for (int k = 0; k < n; ++k)
    s.eigenvalues.push_back(es.eigenvalues(k) - es.eigenvalues(0));
  return s;
}

}  // namespace cpb
