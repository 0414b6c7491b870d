#include "levymax/transforms.hpp"

#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace levymax {

namespace {

// alpha and gamma may dip slightly below 0 (analytic extension, used by the
// central-difference moment oracle); distributional use keeps them >= 0
void require_rates(double beta, double omega, double alpha, double gamma) {
  if (!(beta > 0.0)) fail(errc::invalid_horizon, "transform: beta must be > 0");
  if (!(omega > 0.0)) fail(errc::invalid_horizon, "transform: omega must be > 0");
  if (!std::isfinite(alpha) || !std::isfinite(gamma))
    fail(errc::negative_input, "transform: alpha and gamma must be finite");
  if (!(beta + gamma > 0.0)) fail(errc::invalid_horizon, "transform: beta + gamma must be > 0");
}

}  // namespace

double wh_factor_sp(const LevyModel& m, double zeta, double alpha) {
  if (!(zeta > 0.0)) fail(errc::invalid_horizon, "wh_factor_sp: zeta must be > 0");
  if (!std::isfinite(alpha)) fail(errc::negative_input, "wh_factor_sp: alpha must be finite");
  const double psi_z = right_inverse(m, Side::SpectrallyPositive, zeta);
  const double gap = psi_z - alpha;
  if (std::abs(gap) < 1e-7 * std::max(1.0, psi_z))
    // removable 0/0: the difference quotient of phi between alpha and psi(zeta)
    // equals phi' at the midpoint up to O(gap^2)
    return laplace_exponent_sp(m, 0.5 * (alpha + psi_z)).first;
  return (zeta - laplace_exponent_sp(m, alpha).value) / gap;
}

double joint_lst_inspected_sp(const LevyModel& m, double beta, double omega, double alpha,
                              double gamma) {
  require_rates(beta, omega, alpha, gamma);
  const double whg = wh_factor_sp(m, beta + gamma, alpha);
  if (std::abs(whg) < 1e-13 * std::max(1.0, beta + gamma))
    fail(errc::singular_denominator, "joint_lst_inspected_sp: vanishing factor");
  return wh_factor_sp(m, beta, 0.0) * wh_factor_sp(m, beta + omega + gamma, alpha) /
         (whg * wh_factor_sp(m, beta + omega, 0.0));
}

double joint_lst_inspected_sn(const LevyModel& m, double beta, double omega, double alpha,
                              double gamma) {
  require_rates(beta, omega, alpha, gamma);
  const double psi_b = right_inverse(m, Side::SpectrallyNegative, beta);
  const double psi_w = right_inverse(m, Side::SpectrallyNegative, beta + omega);
  const double psi_wg = right_inverse(m, Side::SpectrallyNegative, beta + omega + gamma);
  const double psi_bg = right_inverse(m, Side::SpectrallyNegative, beta + gamma);
  if (!(psi_bg + alpha > 0.0))
    fail(errc::singular_denominator, "joint_lst_inspected_sn: nonpositive denominator");
  return (psi_b / psi_w) * ((psi_wg + alpha) / (psi_bg + alpha));
}

double joint_lst_inspected(const LevyModel& m, Side side, double beta, double omega, double alpha,
                           double gamma) {
  return side == Side::SpectrallyPositive ? joint_lst_inspected_sp(m, beta, omega, alpha, gamma)
                                          : joint_lst_inspected_sn(m, beta, omega, alpha, gamma);
}

double joint_lst_continuous(const LevyModel& m, Side side, double beta, double alpha,
                            double gamma) {
  if (!(beta > 0.0)) fail(errc::invalid_horizon, "joint_lst_continuous: beta must be > 0");
  if (!std::isfinite(alpha) || !std::isfinite(gamma))
    fail(errc::negative_input, "joint_lst_continuous: alpha and gamma must be finite");
  if (!(beta + gamma > 0.0))
    fail(errc::invalid_horizon, "joint_lst_continuous: beta + gamma must be > 0");
  if (side == Side::SpectrallyPositive) {
    const double whg = wh_factor_sp(m, beta + gamma, alpha);
    if (std::abs(whg) < 1e-13 * std::max(1.0, beta + gamma))
      fail(errc::singular_denominator, "joint_lst_continuous: vanishing factor");
    return wh_factor_sp(m, beta, 0.0) / whg;
  }
  const double psi_b = right_inverse(m, Side::SpectrallyNegative, beta);
  const double psi_bg = right_inverse(m, Side::SpectrallyNegative, beta + gamma);
  if (!(psi_bg + alpha > 0.0))
    fail(errc::singular_denominator, "joint_lst_continuous: nonpositive denominator");
  return psi_b / (psi_bg + alpha);
}

double atom_at_zero_sn(const LevyModel& m, double beta, double omega) {
  if (!(beta > 0.0) || !(omega > 0.0))
    fail(errc::invalid_horizon, "atom_at_zero_sn: beta and omega must be > 0");
  return right_inverse(m, Side::SpectrallyNegative, beta) /
         right_inverse(m, Side::SpectrallyNegative, beta + omega);
}

namespace {

struct SpPieces {
  double b, w;          // beta, beta + omega
  double pb, pw;        // psi at b, w
  double p1b, p1w;      // psi'
  double p2b, p2w;      // psi''
  double f1, f2;        // phi'(0), phi''(0)
};

SpPieces sp_pieces(const LevyModel& m, double beta, double omega) {
  SpPieces s;
  s.b = beta;
  s.w = beta + omega;
  const auto db = inverse_derivatives(m, Side::SpectrallyPositive, s.b);
  const auto dw = inverse_derivatives(m, Side::SpectrallyPositive, s.w);
  s.pb = db.value;
  s.p1b = db.first;
  s.p2b = db.second;
  s.pw = dw.value;
  s.p1w = dw.first;
  s.p2w = dw.second;
  const auto at0 = laplace_exponent_sp(m, 0.0);
  s.f1 = at0.first;
  s.f2 = at0.second;
  if (!std::isfinite(s.f2))
    fail(errc::infinite_second_moment, "moments_inspected: second moment diverges");
  return s;
}

double cross_moment_sp_core(const SpPieces& s, double fifth_sign) {
  return s.p1b / (s.pb * s.pw) + s.p1w / (s.pb * s.pw) - 2.0 * s.p1w / (s.pw * s.pw) +
         s.f1 * (1.0 / s.b - 1.0 / s.w) * (s.p1b / s.pb - s.p1w / s.pw) +
         fifth_sign * (1.0 / s.b - 1.0 / s.w) * (1.0 / s.pb - 1.0 / s.pw) -
         2.0 * (s.f1 / s.b) * (1.0 / s.b - 1.0 / s.w);
}

}  // namespace

MomentReport moments_inspected(const LevyModel& m, Side side, double beta, double omega) {
  if (!(beta > 0.0) || !(omega > 0.0))
    fail(errc::invalid_horizon, "moments_inspected: beta and omega must be > 0");
  MomentReport r;
  if (side == Side::SpectrallyPositive) {
    const SpPieces s = sp_pieces(m, beta, omega);
    r.mean_max = 1.0 / s.pb - 1.0 / s.pw - s.f1 / s.b + s.f1 / s.w;
    r.mean_argmax = -s.p1b / s.pb + s.p1w / s.pw + 1.0 / s.b - 1.0 / s.w;
    r.cross_moment = cross_moment_sp_core(s, +1.0);
    r.covariance = -s.f1 * (1.0 / (s.b * s.b) - 1.0 / (s.w * s.w)) + s.p1b / (s.pb * s.pb) -
                   s.p1w / (s.pw * s.pw);
    r.var_max = s.f2 * (1.0 / s.b - 1.0 / s.w) + s.f1 * s.f1 * (1.0 / (s.b * s.b) - 1.0 / (s.w * s.w)) -
                1.0 / (s.pb * s.pb) + 1.0 / (s.pw * s.pw);
    r.var_argmax = 1.0 / (s.b * s.b) - 1.0 / (s.w * s.w) + s.p2b / s.pb - s.p2w / s.pw -
                   (s.p1b / s.pb) * (s.p1b / s.pb) + (s.p1w / s.pw) * (s.p1w / s.pw);
  } else {
    const auto db = inverse_derivatives(m, Side::SpectrallyNegative, beta);
    const auto dw = inverse_derivatives(m, Side::SpectrallyNegative, beta + omega);
    const double pb = db.value, p1b = db.first, p2b = db.second;
    const double pw = dw.value, p1w = dw.first, p2w = dw.second;
    r.mean_max = 1.0 / pb - 1.0 / pw;
    r.mean_argmax = p1b / pb - p1w / pw;
    r.cross_moment = (p1b / pb) * (1.0 / pb - 1.0 / pw) + (1.0 / pb) * (p1b / pb - p1w / pw);
    r.covariance = p1b / (pb * pb) - p1w / (pw * pw);
    r.var_max = 1.0 / (pb * pb) - 1.0 / (pw * pw);
    r.var_argmax = p2w / pw - p2b / pb + (p1b / pb) * (p1b / pb) - (p1w / pw) * (p1w / pw);
  }
  return r;
}

double mean_max_continuous(const LevyModel& m, Side side, double beta) {
  if (!(beta > 0.0)) fail(errc::invalid_horizon, "mean_max_continuous: beta must be > 0");
  if (side == Side::SpectrallyPositive) {
    const double pb = right_inverse(m, Side::SpectrallyPositive, beta);
    return 1.0 / pb - laplace_exponent_sp(m, 0.0).first / beta;
  }
  return 1.0 / right_inverse(m, Side::SpectrallyNegative, beta);
}

double cross_moment_sp_variant(const LevyModel& m, double beta, double omega) {
  if (!(beta > 0.0) || !(omega > 0.0))
    fail(errc::invalid_horizon, "cross_moment_sp_variant: beta and omega must be > 0");
  return cross_moment_sp_core(sp_pieces(m, beta, omega), -1.0);
}

FrullaniCheck frullani_check(double beta, double omega) {
  if (!(beta > 0.0)) fail(errc::invalid_horizon, "frullani_check: beta must be > 0");
  if (!(omega >= 0.0)) fail(errc::negative_input, "frullani_check: omega must be >= 0");
  FrullaniCheck out;
  out.closed_form = std::log1p(omega / beta);
  if (omega == 0.0) return out;  // integrand identically zero
  auto f = [&](double t) {
    if (t <= 0.0) return omega;  // continuous extension at 0
    return std::exp(-beta * t) * (-std::expm1(-omega * t)) / t;
  };
  const double upper = 50.0 / beta;
  double err = 0.0;
  out.quadrature = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      f, 0.0, upper, 15, 1e-10, &err);
  // truncated tail is below exp(-50)/50 ~ 4e-24, already inside the tolerance
  if (!(err < 1e-9))
    fail(errc::non_convergence, "frullani_check: quadrature error estimate too large");
  return out;
}

}  // namespace levymax
