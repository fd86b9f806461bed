#include "cpb/spectroscopy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cpb/constants.hpp"

namespace cpb {

using namespace constants;

bool NotchResonance::overcoupled() const {
  // 1/Q_l = 1/Q_c + 1/Q_i; overcoupled means Q_c < Q_i.
  const double q_internal = 1.0 / (1.0 / q_loaded - 1.0 / q_coupling);
  return q_coupling < q_internal;
}

void NotchResonance::validate() const {
  if (f_r <= 0 || q_loaded <= 0 || q_coupling <= 0)
    throw ValidationError("NotchResonance: all parameters must be positive");
  if (q_loaded >= q_coupling)
    throw ValidationError("NotchResonance: q_loaded must be below q_coupling");
}

void TwoToneConfig::validate() const {
  if (pump_photon_scale <= 0)
    throw ValidationError("TwoToneConfig: pump_photon_scale must be > 0");
  auto strictly_monotone = [](const std::vector<double>& v) {
    for (size_t i = 1; i < v.size(); ++i)
      if (v[i] <= v[i - 1]) return false;
    return true;
  };
  if (!strictly_monotone(pump_grid) || !strictly_monotone(ng_grid) ||
      !strictly_monotone(p_pump_grid))
    throw ValidationError("TwoToneConfig: grids must be strictly monotone");
}

void DecoherenceRates::validate() const {
  if (gamma1_down <= 0 || gamma2_down <= 0)
    throw ValidationError("DecoherenceRates: rates must be positive");
  if (gamma2_down < 0.5 * gamma1_down)
    throw ValidationError("DecoherenceRates: Gamma_2 >= Gamma_1/2 violated");
}

namespace {

// Raising operator of resonator `which` (0 = cold, 1 = hot) in the joint
// qubit x cold x hot product basis.
Eigen::MatrixXd joint_raise(int nc, int nh, int which) {
  const int dim = 2 * nc * nh;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
  for (int iq = 0; iq < 2; ++iq)
    for (int ic = 0; ic < nc; ++ic)
      for (int ih = 0; ih < nh; ++ih) {
        const int col = (iq * nc + ic) * nh + ih;
        if (which == 0 && ic + 1 < nc)
          m((iq * nc + ic + 1) * nh + ih, col) = std::sqrt(ic + 1.0);
        if (which == 1 && ih + 1 < nh)
          m((iq * nc + ic) * nh + ih + 1, col) = std::sqrt(ih + 1.0);
      }
  return m;
}

}  // namespace

Eigen::MatrixXd one_tone_map(const QubitParams& q, const ResonatorParams& res_c,
                             const ResonatorParams& res_h,
                             const NotchResonance& notch_c,
                             const NotchResonance& notch_h,
                             const std::vector<double>& ng_grid,
                             const std::vector<double>& f_grid) {
  notch_c.validate();
  notch_h.validate();
  const int nc = res_c.n_fock, nh = res_h.n_fock;
  const Eigen::MatrixXd raise_c = joint_raise(nc, nh, 0);
  const Eigen::MatrixXd raise_h = joint_raise(nc, nh, 1);

  const double depth_c = 1.0 - notch_c.q_loaded / notch_c.q_coupling;
  const double depth_h = 1.0 - notch_h.q_loaded / notch_h.q_coupling;
  const double hwhm_c = 0.5 * notch_c.f_r / notch_c.q_loaded;
  const double hwhm_h = 0.5 * notch_h.f_r / notch_h.q_loaded;

  Eigen::MatrixXd map =
      Eigen::MatrixXd::Ones(f_grid.size(), ng_grid.size());
  for (size_t j = 0; j < ng_grid.size(); ++j) {
    const EigenSystem es = eigensolve_hermitian(
        build_full_hamiltonian(q, res_c, res_h, GateCharge{ng_grid[j]}, 0.0));
    const Eigen::VectorXd ground = es.eigenvectors.col(0);
    const Eigen::VectorXd reach_c = raise_c * ground;
    const Eigen::VectorXd reach_h = raise_h * ground;
    for (int k = 1; k < es.eigenvalues.size(); ++k) {
      const double fk = es.eigenvalues(k) - es.eigenvalues(0);
      const double wc = std::pow(es.eigenvectors.col(k).dot(reach_c), 2);
      const double wh = std::pow(es.eigenvectors.col(k).dot(reach_h), 2);
      if (wc < 1e-12 && wh < 1e-12) continue;
      for (size_t i = 0; i < f_grid.size(); ++i) {
        const double dc = f_grid[i] - fk;
        double dip = wc * depth_c / (1.0 + dc * dc / (hwhm_c * hwhm_c)) +
                     wh * depth_h / (1.0 + dc * dc / (hwhm_h * hwhm_h));
        map(i, j) -= dip;
      }
    }
  }
  return map.cwiseMax(0.0).cwiseMin(1.0);
}

double dispersive_shift(const QubitParams& q, const ResonatorParams& res_c,
                        const ResonatorParams& res_h, ResonatorRole branch) {
  const ResonatorParams& res =
      branch == ResonatorRole::cold ? res_c : res_h;
  const GateCharge degeneracy{0.5};
  const double delta = res.f_r - qubit_frequency(q, degeneracy);
  if (std::abs(delta) <= 5.0 * res.g0_over_2pi)
    throw DispersiveRegimeViolation(
        "dispersive_shift: |Delta| <= 5 g, dispersive expansion invalid");

  const EigenSystem es = eigensolve_hermitian(
      build_full_hamiltonian(q, res_c, res_h, degeneracy, 0.0));
  // Target: qubit ground with one photon in the branch resonator. Basis index
  // (iq * nc + ic) * nh + ih with qubit ground first.
  const int nh = res_h.n_fock;
  const int target_basis = branch == ResonatorRole::cold ? nh : 1;
  int best = -1;
  double best_overlap = 0.0;
  for (int k = 0; k < es.eigenvalues.size(); ++k) {
    const double ov = std::abs(es.eigenvectors(target_basis, k));
    if (ov > best_overlap) {
      best_overlap = ov;
      best = k;
    }
  }
  const double f_dressed = es.eigenvalues(best) - es.eigenvalues(0);
  return f_dressed - res.f_r;
}

double effective_coupling_from_shift(double chi, double delta) {
  if (chi * delta < 0)
    throw NegativeProduct("effective_coupling_from_shift: chi * delta < 0");
  return std::sqrt(chi * delta);
}

double steady_state_population(double f_q, double f_pump, double n_p,
                               double g_h_rad, const DecoherenceRates& rates) {
  rates.validate();
  const double sat =
      4.0 * n_p * g_h_rad * g_h_rad / (rates.gamma1_down * rates.gamma2_down);
  const double detune = two_pi * (f_q - f_pump) / rates.gamma2_down;
  return 0.5 * sat / (1.0 + detune * detune + sat);
}

double linewidth_model(double n_p, double g_h_rad,
                       const DecoherenceRates& rates) {
  rates.validate();
  const double sat =
      4.0 * n_p * g_h_rad * g_h_rad / (rates.gamma1_down * rates.gamma2_down);
  return rates.gamma2_down * std::sqrt(1.0 + sat) / two_pi;
}

LorentzianFit fit_lorentzian(const std::vector<double>& x,
                             const std::vector<double>& y) {
  const size_t n = x.size();
  if (n < 5 || y.size() != n)
    throw ValidationError("fit_lorentzian: need at least 5 samples");
  for (size_t i = 1; i < n; ++i)
    if (x[i] <= x[i - 1])
      throw ValidationError("fit_lorentzian: x must be strictly monotone");

  const double y_min = *std::min_element(y.begin(), y.end());
  const double y_max = *std::max_element(y.begin(), y.end());
  if (y_max - y_min <= 0.0 ||
      (y_max - y_min) < 1e-14 * std::max(std::abs(y_max), 1.0))
    throw DegenerateData("fit_lorentzian: y is constant");

  // Initial guess: peak location, edge offset, half-max scan for the width.
  const double edge = 0.5 * (y.front() + y.back());
  size_t peak = 0;
  for (size_t i = 0; i < n; ++i)
    if (std::abs(y[i] - edge) > std::abs(y[peak] - edge)) peak = i;
  double offset = edge;
  double amp = y[peak] - edge;
  double center = x[peak];
  const double half = offset + 0.5 * amp;
  double lo = x.front(), hi = x.back();
  for (size_t i = peak; i-- > 0;)
    if ((y[i] - half) * (amp > 0 ? 1 : -1) < 0) { lo = x[i]; break; }
  for (size_t i = peak + 1; i < n; ++i)
    if ((y[i] - half) * (amp > 0 ? 1 : -1) < 0) { hi = x[i]; break; }
  double fwhm = std::max(hi - lo, (x.back() - x.front()) / (double)n);

  Eigen::Vector4d p(offset, amp, center, fwhm);
  double lambda = 1e-3;
  auto model = [](const Eigen::Vector4d& p, double xi) {
    const double u = (xi - p(2)) / (0.5 * p(3));
    return p(0) + p(1) / (1.0 + u * u);
  };

  auto chi2 = [&](const Eigen::Vector4d& p) {
    double s = 0.0;
    for (size_t i = 0; i < n; ++i) {
      const double r = model(p, x[i]) - y[i];
      s += r * r;
    }
    return s;
  };

  double cost = chi2(p);
  int iter = 0;
  const int max_iter = 200;
  bool converged = false;
  for (; iter < max_iter; ++iter) {
    Eigen::Matrix4d jtj = Eigen::Matrix4d::Zero();
    Eigen::Vector4d jtr = Eigen::Vector4d::Zero();
    for (size_t i = 0; i < n; ++i) {
      const double hw = 0.5 * p(3);
      const double u = (x[i] - p(2)) / hw;
      const double denom = 1.0 + u * u;
      const double r = p(0) + p(1) / denom - y[i];
      Eigen::Vector4d j;
      j(0) = 1.0;
      j(1) = 1.0 / denom;
      j(2) = p(1) * 2.0 * u / (denom * denom * hw);
      j(3) = 2.0 * p(1) * u * u / (denom * denom * p(3));
      jtj += j * j.transpose();
      jtr += j * r;
    }
    Eigen::Matrix4d damped = jtj;
    damped.diagonal() += lambda * jtj.diagonal();
    const Eigen::Vector4d step = damped.ldlt().solve(-jtr);
    const Eigen::Vector4d trial = p + step;
    if (trial(3) <= 0.0) {
      lambda *= 10.0;
      continue;
    }
    const double trial_cost = chi2(trial);
    if (trial_cost <= cost) {
      const double rel = step.norm() / std::max(p.norm(), 1e-300);
      p = trial;
      cost = trial_cost;
      lambda = std::max(lambda * 0.3, 1e-12);
      if (rel < 1e-10) {
        converged = true;
        break;
      }
    } else {
      lambda *= 10.0;
      if (lambda > 1e12) break;
    }
  }
  if (!converged && iter >= max_iter)
    throw FitDiverged("fit_lorentzian: no convergence after iteration cap");

  LorentzianFit fit;
  fit.offset = p(0);
  fit.amplitude = p(1);
  fit.center = p(2);
  fit.fwhm = std::abs(p(3));
  fit.residual_norm = std::sqrt(cost);
  fit.iterations = iter;
  return fit;
}

double extrapolate_gamma2(const std::vector<double>& p_pump,
                          const std::vector<double>& linewidth_sq) {
  const size_t n = p_pump.size();
  if (n < 3 || linewidth_sq.size() != n)
    throw ValidationError("extrapolate_gamma2: need at least 3 power points");
  const double sx = std::accumulate(p_pump.begin(), p_pump.end(), 0.0);
  const double sy =
      std::accumulate(linewidth_sq.begin(), linewidth_sq.end(), 0.0);
  double sxx = 0.0, sxy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    sxx += p_pump[i] * p_pump[i];
    sxy += p_pump[i] * linewidth_sq[i];
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0)
    throw ValidationError("extrapolate_gamma2: degenerate power grid");
  const double slope = (n * sxy - sx * sy) / denom;
  const double intercept = (sy - slope * sx) / n;
  if (intercept < 0.0)
    throw NegativeIntercept(
        "extrapolate_gamma2: negative intercept, inconsistent data");
  return two_pi * std::sqrt(intercept);
}

Eigen::MatrixXd parity_mix(const Eigen::MatrixXd& even_map,
                           const Eigen::MatrixXd& odd_map, double p_even) {
  if (even_map.rows() != odd_map.rows() || even_map.cols() != odd_map.cols())
    throw ShapeMismatch("parity_mix: maps differ in shape");
  if (p_even < 0.0 || p_even > 1.0)
    throw ValidationError("parity_mix: p_even must be in [0, 1]");
  return p_even * even_map + (1.0 - p_even) * odd_map;
}

Eigen::MatrixXd odd_parity_map(const Eigen::MatrixXd& even_map,
                               const std::vector<double>& ng_grid) {
  const int cols = even_map.cols();
  if ((int)ng_grid.size() != cols)
    throw ShapeMismatch("odd_parity_map: ng grid does not match map columns");
  if (cols < 2) throw ValidationError("odd_parity_map: grid too small");
  const double step = ng_grid[1] - ng_grid[0];
  for (int i = 1; i < cols; ++i)
    if (std::abs(ng_grid[i] - ng_grid[i - 1] - step) > 1e-9 * std::abs(step))
      throw ValidationError("odd_parity_map: ng grid must be uniform");
  const double span = cols * step;
  if (std::abs(span - 1.0) > 1e-6)
    throw ValidationError("odd_parity_map: ng grid must cover one period");
  const int shift = (int)std::lround(0.5 / step) % cols;

  Eigen::MatrixXd odd(even_map.rows(), cols);
  for (int j = 0; j < cols; ++j)
    odd.col((j + shift) % cols) = even_map.col(j);
  return odd;
}

}  // namespace cpb
