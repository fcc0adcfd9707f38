#include "mgsim/transform.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace mgsim {

namespace {

// The FFTW planner is not re-entrant; execution of distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

template <class T>
struct FftwDeleter {
  void operator()(T* p) const { fftw_free(p); }
};
template <class T>
using FftwBuffer = std::unique_ptr<T[], FftwDeleter<T>>;

template <class T>
FftwBuffer<T> fftw_buffer(std::size_t count) {
  auto* p = static_cast<T*>(fftw_malloc(sizeof(T) * std::max<std::size_t>(count, 1)));
  if (p == nullptr) throw std::bad_alloc();
  std::memset(static_cast<void*>(p), 0, sizeof(T) * count);
  return FftwBuffer<T>(p);
}

}  // namespace

ColumnSpectra::ColumnSpectra(int n_max, int width)
    : n_max_(n_max), width_(width), data_(static_cast<std::size_t>(n_max + 1) * width) {}

void ColumnSpectra::set_zero() { std::fill(data_.begin(), data_.end(), cplx{}); }

struct SpectralTransform::Impl {
  Grid grid;
  int n_max;    // N
  int m_max;    // M
  int nx;       // X
  int ny;       // Y
  int half;     // X/2 + 1
  int width;    // doubles per y-buffer row: re/im of n = 0..N

  FftwBuffer<double> ybuf;       // (Y + 2) x width
  FftwBuffer<fftw_complex> cbuf;  // (Y + 2) x half
  FftwBuffer<double> rbuf;       // (Y + 2) x X

  fftw_plan dst = nullptr;         // RODFT00, length Y
  fftw_plan dct = nullptr;         // REDFT00, length Y + 2
  fftw_plan c2r_interior = nullptr;
  fftw_plan c2r_closed = nullptr;
  fftw_plan r2c_interior = nullptr;
  fftw_plan r2c_closed = nullptr;

  explicit Impl(const Grid& g)
      : grid(g),
        n_max(g.n_modes_x()),
        m_max(g.n_modes_y()),
        nx(g.nx()),
        ny(g.ny()),
        half(g.nx() / 2 + 1),
        width(2 * (g.n_modes_x() + 1)),
        ybuf(fftw_buffer<double>(static_cast<std::size_t>(ny + 2) * width)),
        cbuf(fftw_buffer<fftw_complex>(static_cast<std::size_t>(ny + 2) * half)),
        rbuf(fftw_buffer<double>(static_cast<std::size_t>(ny + 2) * nx)) {
    std::lock_guard<std::mutex> lock(planner_mutex());
    const unsigned flags = FFTW_ESTIMATE;
    int len = ny;
    fftw_r2r_kind rodft = FFTW_RODFT00;
    dst = fftw_plan_many_r2r(1, &len, width, ybuf.get(), nullptr, width, 1, ybuf.get(), nullptr,
                             width, 1, &rodft, flags);
    int len_closed = ny + 2;
    fftw_r2r_kind redft = FFTW_REDFT00;
    dct = fftw_plan_many_r2r(1, &len_closed, width, ybuf.get(), nullptr, width, 1, ybuf.get(),
                             nullptr, width, 1, &redft, flags);
    int n = nx;
    c2r_interior = fftw_plan_many_dft_c2r(1, &n, ny, cbuf.get(), nullptr, 1, half, rbuf.get(),
                                          nullptr, 1, nx, flags);
    c2r_closed = fftw_plan_many_dft_c2r(1, &n, ny + 2, cbuf.get(), nullptr, 1, half, rbuf.get(),
                                        nullptr, 1, nx, flags);
    r2c_interior = fftw_plan_many_dft_r2c(1, &n, ny, rbuf.get(), nullptr, 1, nx, cbuf.get(),
                                          nullptr, 1, half, flags);
    r2c_closed = fftw_plan_many_dft_r2c(1, &n, ny + 2, rbuf.get(), nullptr, 1, nx, cbuf.get(),
                                        nullptr, 1, half, flags);
    if (!dst || !dct || !c2r_interior || !c2r_closed || !r2c_interior || !r2c_closed) {
      destroy();
      throw std::runtime_error("SpectralTransform: FFTW planning failed");
    }
  }

  ~Impl() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    destroy();
  }

  void destroy() {
    for (fftw_plan* p : {&dst, &dct, &c2r_interior, &c2r_closed, &r2c_interior, &r2c_closed}) {
      if (*p != nullptr) fftw_destroy_plan(*p);
      *p = nullptr;
    }
  }

  double& y(int row, int n, int part) {
    return ybuf[static_cast<std::size_t>(row) * width + 2 * n + part];
  }

  // ybuf rows [first, first + count) -> physical rows via c2r. `source(r)`
  // gives the ybuf row feeding output row r, or -1 for an all-zero row.
  template <class RowSource>
  void x_synthesis(int out_rows, RowSource source, PhysicalField& out) {
    fftw_complex* c = cbuf.get();
    for (int r = 0; r < out_rows; ++r) {
      fftw_complex* crow = c + static_cast<std::size_t>(r) * half;
      std::fill(&crow[0][0], &crow[0][0] + 2 * half, 0.0);
      const int src = source(r);
      if (src < 0) continue;
      for (int n = 0; n <= n_max; ++n) {
        crow[n][0] = y(src, n, 0);
        crow[n][1] = n == 0 ? 0.0 : y(src, n, 1);
      }
    }
    fftw_execute(out_rows == ny ? c2r_interior : c2r_closed);
    std::copy(rbuf.get(), rbuf.get() + static_cast<std::size_t>(out_rows) * nx,
              out.values().begin());
  }

  // Physical rows -> ybuf rows 0..rows-1 holding the n = 0..N Fourier
  // coefficients (normalized by 1/X).
  void x_analysis(const PhysicalField& f, int first_row, int rows) {
    const std::size_t stride = static_cast<std::size_t>(f.nx());
    std::copy(f.values().begin() + first_row * stride,
              f.values().begin() + (first_row + rows) * stride, rbuf.get());
    fftw_execute(rows == ny ? r2c_interior : r2c_closed);
    const double scale = 1.0 / nx;
    const fftw_complex* c = cbuf.get();
    for (int r = 0; r < rows; ++r) {
      const fftw_complex* crow = c + static_cast<std::size_t>(r) * half;
      for (int n = 0; n <= n_max; ++n) {
        y(r, n, 0) = crow[n][0] * scale;
        y(r, n, 1) = crow[n][1] * scale;
      }
    }
  }
};

SpectralTransform::SpectralTransform(const Grid& grid) : impl_(std::make_unique<Impl>(grid)) {}
SpectralTransform::~SpectralTransform() = default;
SpectralTransform::SpectralTransform(SpectralTransform&&) noexcept = default;
SpectralTransform& SpectralTransform::operator=(SpectralTransform&&) noexcept = default;

const Grid& SpectralTransform::grid() const { return impl_->grid; }

void SpectralTransform::synthesize(const ColumnSpectra& cols, YBasis basis, PhysicalField& out) {
  Impl& d = *impl_;
  if (!(out.grid() == d.grid)) throw std::invalid_argument("synthesize: grid mismatch");
  if (cols.n_max() < d.n_max) throw std::invalid_argument("synthesize: too few wavenumbers");
  const int ny = d.ny;
  std::fill(d.ybuf.get(), d.ybuf.get() + static_cast<std::size_t>(ny + 2) * d.width, 0.0);

  if (basis == YBasis::Sine) {
    const int used = std::min(cols.width(), ny);
    for (int l = 0; l < used; ++l) {
      for (int n = 0; n <= d.n_max; ++n) {
        d.y(l, n, 0) = 0.5 * cols(n, l).real();
        d.y(l, n, 1) = 0.5 * cols(n, l).imag();
      }
    }
    fftw_execute(d.dst);
    if (out.nodes() == YNodes::Interior) {
      d.x_synthesis(ny, [](int r) { return r; }, out);
    } else {
      d.x_synthesis(ny + 2, [ny](int r) { return (r == 0 || r == ny + 1) ? -1 : r - 1; }, out);
    }
    return;
  }

  const int used = std::min(cols.width(), ny + 2);
  for (int j = 0; j < used; ++j) {
    const double scale = (j == 0 || j == ny + 1) ? 1.0 : 0.5;
    for (int n = 0; n <= d.n_max; ++n) {
      d.y(j, n, 0) = scale * cols(n, j).real();
      d.y(j, n, 1) = scale * cols(n, j).imag();
    }
  }
  fftw_execute(d.dct);
  if (out.nodes() == YNodes::Closed) {
    d.x_synthesis(ny + 2, [](int r) { return r; }, out);
  } else {
    d.x_synthesis(ny, [](int r) { return r + 1; }, out);
  }
}

void SpectralTransform::analyze_sine(const PhysicalField& field, SpectralField& out) {
  Impl& d = *impl_;
  if (!(field.grid() == d.grid) || !(out.grid() == d.grid)) {
    throw std::invalid_argument("analyze_sine: grid mismatch");
  }
  const int first = field.nodes() == YNodes::Interior ? 0 : 1;
  d.x_analysis(field, first, d.ny);
  fftw_execute(d.dst);
  const double scale = 1.0 / (d.ny + 1);
  for (int n = 0; n <= d.n_max; ++n) {
    for (int m = 1; m <= d.m_max; ++m) {
      out(n, m) = cplx(d.y(m - 1, n, 0) * scale, d.y(m - 1, n, 1) * scale);
    }
  }
  out.enforce_hermitian();
}

void SpectralTransform::analyze_cosine(const PhysicalField& field, ColumnSpectra& cols) {
  Impl& d = *impl_;
  if (!(field.grid() == d.grid) || field.nodes() != YNodes::Closed) {
    throw std::invalid_argument("analyze_cosine: needs a closed field on this grid");
  }
  d.x_analysis(field, 0, d.ny + 2);
  fftw_execute(d.dct);
  const int k = d.ny + 1;
  const int used = std::min(cols.width(), k + 1);
  cols.set_zero();
  for (int n = 0; n <= std::min(d.n_max, cols.n_max()); ++n) {
    for (int j = 0; j < used; ++j) {
      const double scale = (j == 0 || j == k) ? 0.5 / k : 1.0 / k;
      cols(n, j) = cplx(d.y(j, n, 0) * scale, d.y(j, n, 1) * scale);
    }
  }
}

PhysicalField SpectralTransform::inverse(const SpectralField& s, YNodes nodes) {
  ColumnSpectra cols(s.n_modes_x(), s.n_modes_y());
  sine_columns(s, cols);
  PhysicalField out(impl_->grid, nodes);
  synthesize(cols, YBasis::Sine, out);
  return out;
}

SpectralField SpectralTransform::forward(const PhysicalField& p) {
  SpectralField out(impl_->grid);
  analyze_sine(p, out);
  return out;
}

void sine_columns(const SpectralField& s, ColumnSpectra& out) {
  out.set_zero();
  const int width = std::min(out.width(), s.n_modes_y());
  for (int n = 0; n <= std::min(out.n_max(), s.n_modes_x()); ++n) {
    for (int m = 1; m <= width; ++m) out(n, m - 1) = s(n, m);
  }
}

PhysicalField inverse_transform(const SpectralField& s) {
  const double defect = s.hermitian_defect();
  if (defect > 1e-12) {
    std::ostringstream msg;
    msg << "inverse_transform: coefficients violate Hermitian symmetry (relative defect " << defect
        << " > 1e-12)";
    throw std::invalid_argument(msg.str());
  }
  SpectralTransform t(s.grid());
  return t.inverse(s);
}

SpectralField forward_transform(const PhysicalField& p) {
  SpectralTransform t(p.grid());
  return t.forward(p);
}

SpectralField project_modes(const SpectralField& s, int n_cut, int m_cut) {
  if (n_cut < 0 || m_cut < 0 || n_cut > s.n_modes_x() || m_cut > s.n_modes_y()) {
    throw std::invalid_argument("project_modes: cut exceeds the grid truncation");
  }
  SpectralField out(s.grid());
  for (int n = -n_cut; n <= n_cut; ++n) {
    for (int m = 1; m <= m_cut; ++m) out(n, m) = s(n, m);
  }
  return out;
}

double evaluate_point(const SpectralField& s, double x, double y) {
  double total = 0.0;
  for (int n = -s.n_modes_x(); n <= s.n_modes_x(); ++n) {
    const cplx phase = std::polar(1.0, n * x);
    for (int m = 1; m <= s.n_modes_y(); ++m) {
      total += (s(n, m) * phase).real() * std::sin(m * kPi * y);
    }
  }
  return total;
}

std::vector<double> evaluate_on(const SpectralField& s, std::span<const double> xs,
                                std::span<const double> ys) {
  const int nmax = s.n_modes_x();
  std::vector<double> out(xs.size() * ys.size());
  std::vector<cplx> profile(static_cast<std::size_t>(nmax) + 1);
  std::vector<cplx> phases(xs.size() * (static_cast<std::size_t>(nmax) + 1));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (int n = 0; n <= nmax; ++n) phases[i * (nmax + 1) + n] = std::polar(1.0, n * xs[i]);
  }
  for (std::size_t k = 0; k < ys.size(); ++k) {
    for (int n = 0; n <= nmax; ++n) {
      cplx acc{};
      for (int m = 1; m <= s.n_modes_y(); ++m) acc += s(n, m) * std::sin(m * kPi * ys[k]);
      profile[n] = acc;
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
      double v = profile[0].real();
      for (int n = 1; n <= nmax; ++n) v += 2.0 * (profile[n] * phases[i * (nmax + 1) + n]).real();
      out[k * xs.size() + i] = v;
    }
  }
  return out;
}

}  // namespace mgsim
