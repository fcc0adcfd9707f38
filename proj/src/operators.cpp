#include "mgsim/operators.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "mgsim/kernels.hpp"

namespace mgsim {

namespace {

constexpr cplx kI{0.0, 1.0};

double* as_doubles(std::span<cplx> s) { return reinterpret_cast<double*>(s.data()); }
const double* as_doubles(std::span<const cplx> s) {
  return reinterpret_cast<const double*>(s.data());
}

void require_same_grid(const SpectralField& u, const OperatorWorkspace& ws) {
  if (!(u.grid() == ws.grid())) throw std::invalid_argument("operator: workspace grid mismatch");
}

}  // namespace

double cosine_sine_overlap(int m, int j) {
  if (m == j) return 0.0;
  if (((m + j) & 1) == 0) return 0.0;
  return 4.0 * m / (kPi * (static_cast<double>(m) * m - static_cast<double>(j) * j));
}

void ModelParams::validate(bool theorem_mode) const {
  if (!(mu > 0.0) || !std::isfinite(mu)) throw std::invalid_argument("constraint violated: mu > 0");
  if (!std::isfinite(alpha)) throw std::invalid_argument("constraint violated: alpha finite");
  if (!std::isfinite(beta)) throw std::invalid_argument("constraint violated: beta finite");
  if (theorem_mode) {
    if (alpha > 0.0) {
      throw std::invalid_argument("constraint violated: theorem mode requires alpha <= 0");
    }
    if (forcing) {
      throw std::invalid_argument("constraint violated: theorem mode requires forcing = none");
    }
  }
}

OperatorWorkspace::OperatorWorkspace(const Grid& grid)
    : grid_(grid),
      transform_(grid),
      cosine_width_(std::min(2 * grid.n_modes_y(), grid.ny() + 1) + 1),
      cos_to_sin_(static_cast<std::size_t>(grid.n_modes_y()) * cosine_width_),
      t_matrix_(static_cast<std::size_t>(grid.n_modes_y()) * grid.n_modes_y()),
      sine_u(grid.n_modes_x(), grid.n_modes_y()),
      sine_ux(grid.n_modes_x(), grid.n_modes_y()),
      cos_uy(grid.n_modes_x(), grid.n_modes_y() + 1),
      cos_tu(grid.n_modes_x(), grid.n_modes_y() + 1),
      cos_product(grid.n_modes_x(), cosine_width_),
      phys_u(grid, YNodes::Closed),
      phys_ux(grid, YNodes::Closed),
      phys_uy(grid, YNodes::Closed),
      phys_tu(grid, YNodes::Closed),
      phys_product(grid, YNodes::Closed),
      column_tmp(static_cast<std::size_t>(grid.n_modes_y())) {
  const int mm = grid.n_modes_y();
  for (int m = 1; m <= mm; ++m) {
    for (int j = 0; j < cosine_width_; ++j) {
      cos_to_sin_[static_cast<std::size_t>(m - 1) * cosine_width_ + j] = cosine_sine_overlap(m, j);
    }
  }
  // Tu_n = i n sum_m u_hat (1 - cos(m pi y)) / (m pi)
  for (int mp = 1; mp <= mm; ++mp) {
    for (int m = 1; m <= mm; ++m) {
      t_matrix_[static_cast<std::size_t>(mp - 1) * mm + (m - 1)] =
          (cosine_sine_overlap(mp, 0) - cosine_sine_overlap(mp, m)) / (m * kPi);
    }
  }
}

void t_cosine_columns(const SpectralField& u, ColumnSpectra& out) {
  out.set_zero();
  const int width = std::min(out.width() - 1, u.n_modes_y());
  for (int n = 0; n <= std::min(out.n_max(), u.n_modes_x()); ++n) {
    cplx constant{};
    for (int m = 1; m <= width; ++m) {
      const cplx c = kI * static_cast<double>(n) * u(n, m) / (m * kPi);
      out(n, m) = -c;
      constant += c;
    }
    out(n, 0) = constant;
  }
}

PhysicalField apply_T(const SpectralField& u, OperatorWorkspace& ws) {
  require_same_grid(u, ws);
  t_cosine_columns(u, ws.cos_tu);
  PhysicalField out(u.grid(), YNodes::Closed);
  ws.transform().synthesize(ws.cos_tu, YBasis::Cosine, out);
  std::fill(out.row(0).begin(), out.row(0).end(), 0.0);
  return out;
}

PhysicalField apply_T(const SpectralField& u) {
  OperatorWorkspace ws(u.grid());
  return apply_T(u, ws);
}

void spectral_T_into(const SpectralField& u, OperatorWorkspace& ws, SpectralField& out) {
  require_same_grid(u, ws);
  const auto& kt = kernels::active();
  const int mm = u.n_modes_y();
  for (int n = 0; n <= u.n_modes_x(); ++n) {
    kt.real_matvec(ws.t_matrix().data(), mm, mm, as_doubles(u.column(n)),
                   as_doubles(std::span<cplx>(ws.column_tmp)));
    auto col = out.column(n);
    for (int m = 0; m < mm; ++m) col[m] = kI * static_cast<double>(n) * ws.column_tmp[m];
  }
  out.enforce_hermitian();
}

SpectralField spectral_T(const SpectralField& u, OperatorWorkspace& ws) {
  SpectralField out(u.grid());
  spectral_T_into(u, ws, out);
  return out;
}

SpectralField apply_laplacian(const SpectralField& u) {
  SpectralField out(u.grid());
  for (int n = -u.n_modes_x(); n <= u.n_modes_x(); ++n) {
    for (int m = 1; m <= u.n_modes_y(); ++m) {
      out(n, m) = -(static_cast<double>(n) * n + m * m * kPi * kPi) * u(n, m);
    }
  }
  return out;
}

void nonlinear_term_into(const SpectralField& u, OperatorWorkspace& ws, SpectralField& out,
                         std::optional<ModeCut> cut) {
  require_same_grid(u, ws);
  const int nn = u.n_modes_x();
  const int mm = u.n_modes_y();
  ws.sine_u.set_zero();
  ws.sine_ux.set_zero();
  ws.cos_uy.set_zero();
  for (int n = 0; n <= nn; ++n) {
    for (int m = 1; m <= mm; ++m) {
      const cplx c = u(n, m);
      ws.sine_u(n, m - 1) = c;
      ws.sine_ux(n, m - 1) = kI * static_cast<double>(n) * c;
      ws.cos_uy(n, m) = (m * kPi) * c;
    }
  }
  t_cosine_columns(u, ws.cos_tu);

  SpectralTransform& tr = ws.transform();
  tr.synthesize(ws.sine_u, YBasis::Sine, ws.phys_u);
  tr.synthesize(ws.sine_ux, YBasis::Sine, ws.phys_ux);
  tr.synthesize(ws.cos_uy, YBasis::Cosine, ws.phys_uy);
  tr.synthesize(ws.cos_tu, YBasis::Cosine, ws.phys_tu);

  const auto& kt = kernels::active();
  // -u u_x + Tu u_y
  kt.mul_sub(ws.phys_tu.values().data(), ws.phys_uy.values().data(), ws.phys_u.values().data(),
             ws.phys_ux.values().data(), ws.phys_product.values().data(),
             ws.phys_product.values().size());
  tr.analyze_cosine(ws.phys_product, ws.cos_product);

  const int width = ws.cosine_width();
  for (int n = 0; n <= nn; ++n) {
    kt.real_matvec(ws.cosine_to_sine().data(), mm, width, as_doubles(ws.cos_product.row(n)),
                   as_doubles(out.column(n)));
  }
  if (cut) {
    for (int n = 0; n <= nn; ++n) {
      for (int m = 1; m <= mm; ++m) {
        if (n > cut->n_cut || m > cut->m_cut) out(n, m) = cplx{};
      }
    }
  }
  out.enforce_hermitian();
}

SpectralField nonlinear_term(const SpectralField& u, OperatorWorkspace& ws) {
  SpectralField out(u.grid());
  nonlinear_term_into(u, ws, out);
  return out;
}

void explicit_terms_into(const SpectralField& u, const ModelParams& p, double t,
                         OperatorWorkspace& ws, SpectralField& out) {
  if (p.nonlinear) {
    nonlinear_term_into(u, ws, out, p.nonlinear_cut);
  } else {
    out.set_zero();
  }
  if (p.beta != 0.0) {
    const int mm = u.n_modes_y();
    const auto& kt = kernels::active();
    for (int n = 0; n <= u.n_modes_x(); ++n) {
      kt.real_matvec(ws.t_matrix().data(), mm, mm, as_doubles(u.column(n)),
                     as_doubles(std::span<cplx>(ws.column_tmp)));
      auto col = out.column(n);
      const cplx factor = -p.beta * kI * static_cast<double>(n);
      for (int m = 0; m < mm; ++m) col[m] += factor * ws.column_tmp[m];
    }
    out.enforce_hermitian();
  }
  if (p.forcing) p.forcing->accumulate(t, ws, out);
}

SpectralField rhs(const SpectralField& u, const ModelParams& p, double t, OperatorWorkspace& ws) {
  require_same_grid(u, ws);
  SpectralField out(u.grid());
  explicit_terms_into(u, p, t, ws, out);
  const std::vector<double> symbol = linear_symbol(u.grid(), p);
  auto dst = out.coefficients();
  auto src = u.coefficients();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += symbol[i] * src[i];
  return out;
}

PhysicalField reconstruct_v(const SpectralField& u, OperatorWorkspace& ws) {
  PhysicalField v = apply_T(u, ws);
  for (double& x : v.values()) x = -x;
  std::fill(v.row(0).begin(), v.row(0).end(), 0.0);
  return v;
}

std::vector<double> linear_symbol(const Grid& grid, const ModelParams& p) {
  std::vector<double> out(grid.coef_count());
  for (int n = -grid.n_modes_x(); n <= grid.n_modes_x(); ++n) {
    for (int m = 1; m <= grid.n_modes_y(); ++m) {
      out[grid.index(n, m)] = p.alpha - p.mu * (static_cast<double>(n) * n + m * m * kPi * kPi);
    }
  }
  return out;
}

}  // namespace mgsim
