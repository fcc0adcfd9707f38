#include "mgsim/fd_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace mgsim::fd {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kInstability = 1e6;

void zero_walls(std::vector<double>& v, const FdGrid& g) {
  for (int j = 0; j < g.nx; ++j) {
    v[g.index(j, 0)] = 0.0;
    v[g.index(j, g.ny)] = 0.0;
  }
}

}  // namespace

void FdGrid::validate() const {
  if (nx < 8 || nx % 2 != 0) throw std::invalid_argument("fd grid: nx must be even and >= 8");
  if (ny < 8) throw std::invalid_argument("fd grid: ny must be >= 8");
}

double FdGrid::dx() const { return kTwoPi / nx; }

std::vector<double> fd_T(const FdState& s) {
  const FdGrid& g = s.grid;
  std::vector<double> ux(g.size()), out(g.size(), 0.0);
  const double inv2dx = 1.0 / (2.0 * g.dx());
  for (int k = 0; k <= g.ny; ++k) {
    const double* row = &s.values[g.index(0, k)];
    double* dst = &ux[g.index(0, k)];
    for (int j = 0; j < g.nx; ++j) {
      const int jp = j + 1 == g.nx ? 0 : j + 1;
      const int jm = j == 0 ? g.nx - 1 : j - 1;
      dst[j] = (row[jp] - row[jm]) * inv2dx;
    }
  }
  const double half_dy = 0.5 * g.dy();
  for (int k = 1; k <= g.ny; ++k) {
    for (int j = 0; j < g.nx; ++j) {
      out[g.index(j, k)] =
          out[g.index(j, k - 1)] + half_dy * (ux[g.index(j, k - 1)] + ux[g.index(j, k)]);
    }
  }
  return out;
}

std::vector<double> fd_rhs(const FdState& s, const ModelParams& p) {
  if (p.forcing) throw std::invalid_argument("fd oracle: forcing is not supported");
  const FdGrid& g = s.grid;
  const std::vector<double> tu = fd_T(s);
  std::vector<double> out(g.size(), 0.0);
  const double inv2dx = 1.0 / (2.0 * g.dx());
  const double inv2dy = 1.0 / (2.0 * g.dy());
  const double invdx2 = 1.0 / (g.dx() * g.dx());
  const double invdy2 = 1.0 / (g.dy() * g.dy());
  const int nx = g.nx;
  for (int k = 1; k < g.ny; ++k) {
    const double* below = &s.values[g.index(0, k - 1)];
    const double* row = &s.values[g.index(0, k)];
    const double* above = &s.values[g.index(0, k + 1)];
    const double* trow = &tu[g.index(0, k)];
    double* dst = &out[g.index(0, k)];
    for (int j = 0; j < nx; ++j) {
      const int jp = j + 1 == nx ? 0 : j + 1;
      const int jm = j == 0 ? nx - 1 : j - 1;
      const double u = row[j];
      const double ux = (row[jp] - row[jm]) * inv2dx;
      const double uy = (above[j] - below[j]) * inv2dy;
      const double uxx = (row[jp] - 2.0 * u + row[jm]) * invdx2;
      const double uyy = (above[j] - 2.0 * u + below[j]) * invdy2;
      const double t = trow[j];
      double value = p.mu * (uxx + uyy) + p.alpha * u - p.beta * t;
      if (p.nonlinear) value += -u * ux + t * uy;
      dst[j] = value;
    }
  }
  return out;
}

double fd_max_dt(const FdGrid& g, double mu, double safety) {
  const double h = std::min(g.dx(), g.dy());
  return safety * h * h / (4.0 * mu);
}

FdState fd_step_rk4(const FdState& s, const ModelParams& p, double dt) {
  if (dt > fd_max_dt(s.grid, p.mu, 1.0)) {
    throw std::invalid_argument("fd oracle: dt above the explicit diffusive limit");
  }
  const std::size_t size = s.values.size();
  FdState stage(s.grid);
  auto make_stage = [&](const std::vector<double>& k, double factor) {
    for (std::size_t i = 0; i < size; ++i) stage.values[i] = s.values[i] + factor * k[i];
    zero_walls(stage.values, s.grid);
    return fd_rhs(stage, p);
  };
  const std::vector<double> k1 = fd_rhs(s, p);
  const std::vector<double> k2 = make_stage(k1, 0.5 * dt);
  const std::vector<double> k3 = make_stage(k2, 0.5 * dt);
  const std::vector<double> k4 = make_stage(k3, dt);
  FdState next(s.grid);
  next.t = s.t + dt;
  double peak = 0.0;
  for (std::size_t i = 0; i < size; ++i) {
    next.values[i] = s.values[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    peak = std::max(peak, std::abs(next.values[i]));
  }
  zero_walls(next.values, s.grid);
  if (!(peak <= kInstability)) {
    throw FdInstability("fd oracle: instability (max norm > 1e6) at t = " +
                        std::to_string(next.t));
  }
  return next;
}

FdState fd_run(FdState s, const ModelParams& p, double t_end, double safety) {
  s.grid.validate();
  p.validate();
  const double dt_max = fd_max_dt(s.grid, p.mu, safety);
  const double span = t_end - s.t;
  if (span <= 0.0) return s;
  const long steps = static_cast<long>(std::ceil(span / dt_max));
  const double dt = span / steps;
  const double t0 = s.t;
  for (long i = 0; i < steps; ++i) {
    s = fd_step_rk4(s, p, dt);
    s.t = t0 + (i + 1) * dt;
  }
  return s;
}

}  // namespace mgsim::fd
