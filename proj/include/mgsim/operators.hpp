#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "mgsim/fields.hpp"
#include "mgsim/transform.hpp"

namespace mgsim {

class OperatorWorkspace;

/// Heat-source term F(x, y, t), delivered as sine coefficients on the
/// solver grid.
class Forcing {
 public:
  virtual ~Forcing() = default;
  virtual std::string_view name() const = 0;
  /// target += F(t)
  virtual void accumulate(double t, OperatorWorkspace& ws, SpectralField& target) const = 0;
};

struct ModeCut {
  int n_cut;
  int m_cut;
};

enum class ForcingKind { None, Manufactured };

/// Constants of u_t + u u_x - Tu u_y = mu Lap u + alpha u - beta Tu + F.
struct ModelParams {
  double mu = 1.0;
  double alpha = 0.0;
  double beta = 0.0;
  /// Switch for the quadratic term; off gives the linear model.
  bool nonlinear = true;
  /// Keep only |n| <= n_cut, m <= m_cut of the quadratic term.
  std::optional<ModeCut> nonlinear_cut;
  /// Null means F = 0.
  std::shared_ptr<const Forcing> forcing;

  ForcingKind forcing_kind() const {
    return forcing ? ForcingKind::Manufactured : ForcingKind::None;
  }
  /// Throws std::invalid_argument naming the violated clause. Theorem mode
  /// additionally requires alpha <= 0 and no forcing.
  void validate(bool theorem_mode = false) const;
};

/// Scratch buffers and projection matrices for one grid. One workspace per
/// concurrent evaluation.
class OperatorWorkspace {
 public:
  explicit OperatorWorkspace(const Grid& grid);

  const Grid& grid() const { return grid_; }
  SpectralTransform& transform() { return transform_; }

  /// Number of cosine coefficients kept for products (j = 0..width-1).
  int cosine_width() const { return cosine_width_; }
  /// Row-major M x cosine_width(): L2 projection of cos(j pi y) onto the
  /// sine basis, P[m][j] = 2 int_0^1 cos(j pi y) sin(m pi y) dy.
  std::span<const double> cosine_to_sine() const { return cos_to_sin_; }
  /// Row-major M x M: sine coefficients of Tu per unit i n u_hat(n, m).
  std::span<const double> t_matrix() const { return t_matrix_; }

 private:
  Grid grid_;
  SpectralTransform transform_;
  int cosine_width_;
  std::vector<double> cos_to_sin_;
  std::vector<double> t_matrix_;

 public:
  // Scratch, reused across calls.
  ColumnSpectra sine_u;
  ColumnSpectra sine_ux;
  ColumnSpectra cos_uy;
  ColumnSpectra cos_tu;
  ColumnSpectra cos_product;
  PhysicalField phys_u;
  PhysicalField phys_ux;
  PhysicalField phys_uy;
  PhysicalField phys_tu;
  PhysicalField phys_product;
  std::vector<cplx> column_tmp;
};

/// 2 int_0^1 cos(j pi y) sin(m pi y) dy: 4m / (pi (m^2 - j^2)) for m + j odd,
/// zero otherwise.
double cosine_sine_overlap(int m, int j);

/// Cosine coefficients of Tu(., y) = int_0^y u_x d(xi) for n = 0..N:
/// entry 0 is i n sum_m u_hat/(m pi), entry m is -i n u_hat(n,m)/(m pi).
void t_cosine_columns(const SpectralField& u, ColumnSpectra& out);

/// Tu on the closed grid via the exact mode-wise antiderivative
/// i n u_hat (1 - cos(m pi y)) / (m pi). The y = 0 row is exactly zero.
PhysicalField apply_T(const SpectralField& u, OperatorWorkspace& ws);
PhysicalField apply_T(const SpectralField& u);

/// L2 projection of Tu onto the sine basis (exact, no quadrature).
SpectralField spectral_T(const SpectralField& u, OperatorWorkspace& ws);
void spectral_T_into(const SpectralField& u, OperatorWorkspace& ws, SpectralField& out);

/// coef(n, m) * -(n^2 + m^2 pi^2)
SpectralField apply_laplacian(const SpectralField& u);

/// Right-hand-side contribution of the quadratic terms, -u u_x + Tu u_y.
/// Products are formed on the closed oversampled grid, where they are cosine
/// polynomials of degree <= 2M, recovered exactly by a DCT and projected onto
/// the sine basis in L2. With oversample >= 2 this is the Galerkin term.
SpectralField nonlinear_term(const SpectralField& u, OperatorWorkspace& ws);
void nonlinear_term_into(const SpectralField& u, OperatorWorkspace& ws, SpectralField& out,
                         std::optional<ModeCut> cut = std::nullopt);

/// Everything except mu Lap + alpha: quadratic term - beta spectral_T + F(t).
void explicit_terms_into(const SpectralField& u, const ModelParams& p, double t,
                         OperatorWorkspace& ws, SpectralField& out);

/// Full right-hand side u_t = ...
SpectralField rhs(const SpectralField& u, const ModelParams& p, double t, OperatorWorkspace& ws);

/// Vertical velocity v = -Tu on the closed grid; v(x, 0) = 0.
PhysicalField reconstruct_v(const SpectralField& u, OperatorWorkspace& ws);

/// Linear symbol alpha - mu (n^2 + m^2 pi^2) of every stored coefficient.
std::vector<double> linear_symbol(const Grid& grid, const ModelParams& p);

}  // namespace mgsim
