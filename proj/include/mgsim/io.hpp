#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "mgsim/diagnostics.hpp"
#include "mgsim/verification.hpp"

namespace mgsim {

/// t,l2,h1dot,linf,max_u,min_u,mean,wiener0,wiener1,wiener2,energy_residual,wiener_ineq_residual
inline constexpr const char* kDiagnosticsHeader =
    "t,l2,h1dot,linf,max_u,min_u,mean,wiener0,wiener1,wiener2,energy_residual,"
    "wiener_ineq_residual";

/// One row per record, 17 significant digits. Throws std::invalid_argument
/// for an empty log and std::runtime_error on I/O failure.
void write_diagnostics_csv(const TrajectoryLog& log, std::ostream& os);
void write_diagnostics_csv(const TrajectoryLog& log, const std::filesystem::path& path);

/// Inverse of write_diagnostics_csv for the columns it carries (location
/// and tu_u fields are left at 0). Throws std::runtime_error naming the
/// first missing column.
std::vector<DiagnosticsRecord> read_diagnostics_csv(std::istream& is);

/// <stem>.txt and <stem>.json.
void write_report(const std::vector<VerificationReport>& reports, const std::filesystem::path& stem);

/// n,m,re,im,abs for n = 0..N, m = 1..M.
void write_spectrum_csv(const SpectralField& u, std::ostream& os);

}  // namespace mgsim
