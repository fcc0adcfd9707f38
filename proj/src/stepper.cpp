#include "mgsim/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mgsim/kernels.hpp"

namespace mgsim {

namespace {

double* raw(SpectralField& s) { return reinterpret_cast<double*>(s.coefficients().data()); }
const double* raw(const SpectralField& s) {
  return reinterpret_cast<const double*>(s.coefficients().data());
}

bool blew_up(const SpectralField& u) {
  if (!u.all_finite()) return true;
  const std::vector<double> ones(u.coefficients().size(), kPi);
  const double l2sq = kernels::active().weighted_norm2(ones.data(), raw(u), ones.size());
  return !(std::sqrt(l2sq) <= kBlowUpThreshold);
}

}  // namespace

void StepperConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("constraint violated: dt > 0");
  if (!(t_end > 0.0) || !std::isfinite(t_end)) {
    throw std::invalid_argument("constraint violated: t_end > 0");
  }
  if (dt > t_end) throw std::invalid_argument("constraint violated: dt <= t_end");
  if (!(cfl_safety > 0.0 && cfl_safety <= 1.0)) {
    throw std::invalid_argument("constraint violated: 0 < cfl_safety <= 1");
  }
  if (log_every < 1) throw std::invalid_argument("constraint violated: log_every >= 1");
}

double phi1(double z) {
  if (z == 0.0) return 1.0;
  return std::expm1(z) / z;
}

double phi2(double z) {
  if (std::abs(z) < 0.1) {
    // Taylor series sum z^k/(k+2)!
    double term = 0.5;
    double sum = 0.0;
    for (int k = 0; k < 12; ++k) {
      sum += term;
      term *= z / (k + 3);
    }
    return sum;
  }
  return (std::expm1(z) - z) / (z * z);
}

Stepper::Stepper(const Grid& grid, ModelParams params, Scheme scheme)
    : params_(std::move(params)),
      scheme_(scheme),
      ws_(grid),
      symbol_(linear_symbol(grid, params_)),
      k1_(grid),
      k2_(grid),
      stage_(grid) {
  params_.validate();
}

void Stepper::prepare(double dt) {
  if (dt == cached_dt_) return;
  const std::size_t count = symbol_.size();
  decay_.resize(count);
  w_first_.resize(count);
  w_second_.resize(count);
  unit_dt_.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double z = symbol_[i] * dt;
    decay_[i] = std::exp(z);
    if (scheme_ == Scheme::IntegratingFactorRK2) {
      w_first_[i] = 0.5 * dt * decay_[i];
      w_second_[i] = 0.5 * dt;
      unit_dt_[i] = dt * decay_[i];
    } else {
      w_first_[i] = dt * phi1(z);
      w_second_[i] = dt * phi2(z);
      unit_dt_[i] = w_first_[i];
    }
  }
  cached_dt_ = dt;
}

void Stepper::step(SolverState& state, double dt) {
  prepare(dt);
  const auto& kt = kernels::active();
  const std::size_t count = symbol_.size();
  SpectralField& u = state.u;

  explicit_terms_into(u, params_, state.t, ws_, k1_);
  // Stage value, identical for both schemes: e^{L dt} u + c k1.
  kt.combine3(decay_.data(), raw(u), unit_dt_.data(), raw(k1_), nullptr, nullptr, raw(stage_),
              count);
  stage_.enforce_hermitian();
  explicit_terms_into(stage_, params_, state.t + dt, ws_, k2_);

  if (scheme_ == Scheme::IntegratingFactorRK2) {
    // e^{L dt}(u + dt/2 k1) + dt/2 k2
    kt.combine3(decay_.data(), raw(u), w_first_.data(), raw(k1_), w_second_.data(), raw(k2_),
                raw(stage_), count);
  } else {
    // e^{L dt} u + dt phi1 k1 + dt phi2 (k2 - k1)
    k2_ -= k1_;
    kt.combine3(decay_.data(), raw(u), w_first_.data(), raw(k1_), w_second_.data(), raw(k2_),
                raw(stage_), count);
  }
  stage_.enforce_hermitian();
  if (blew_up(stage_)) {
    throw BlowUpError(state.t, "blow-up: non-finite or |u|_L2 > 1e12 after t = " +
                                   std::to_string(state.t));
  }
  std::swap(state.u, stage_);
  state.t += dt;
  ++state.step_count;
}

SolverState step_imex(const SolverState& state, const ModelParams& p, const StepperConfig& cfg) {
  Stepper stepper(state.u.grid(), p, cfg.scheme);
  SolverState next = state;
  stepper.step(next, cfg.dt);
  return next;
}

double stable_dt(const SpectralField& u, const ModelParams& p, const StepperConfig& cfg) {
  double u_sup = 0.0;
  double tu_sup = 0.0;
  for (int n = -u.n_modes_x(); n <= u.n_modes_x(); ++n) {
    for (int m = 1; m <= u.n_modes_y(); ++m) {
      const double a = std::abs(u(n, m));
      u_sup += a;
      tu_sup += 2.0 * std::abs(n) / (m * kPi) * a;
    }
  }
  if (u_sup == 0.0) return cfg.dt;
  const Grid& g = u.grid();
  double limit = std::numeric_limits<double>::infinity();
  limit = std::min(limit, g.dx() / u_sup);
  if (tu_sup > 0.0) limit = std::min(limit, g.dy() / tu_sup);
  if (p.beta != 0.0 && u.n_modes_x() > 0) {
    limit = std::min(limit, kPi / (2.0 * u.n_modes_x() * std::abs(p.beta)));
  }
  return std::min(cfg.dt, cfg.cfl_safety * limit);
}

}  // namespace mgsim
