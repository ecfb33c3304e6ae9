#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>

#include "growpop/montecarlo.hpp"
#include "growpop/observables.hpp"

namespace growpop {

/// Key/value pairs written as leading "# key=value" comment lines.
using CsvMetadata = std::map<std::string, std::string>;

/// Shortest decimal string that parses back to exactly `v`.
std::string format_real(double v);

/// Single-run columns: t, n, m1_0..m1_{d-1}, m2, v, w, dissipation, event.
void write_series_csv(std::ostream& out, const MomentSeries& series, const CsvMetadata& meta = {});
void emit_series_csv(const MomentSeries& series, const std::filesystem::path& path, const CsvMetadata& meta = {});

/// Ensemble columns: t, mean_w, stderr_w, mean_v, stderr_v, mean_m1_dev,
/// stderr_m1_dev, event.
void write_ensemble_csv(std::ostream& out, const EnsembleStats& stats, const CsvMetadata& meta = {});
void emit_ensemble_csv(const EnsembleStats& stats, const std::filesystem::path& path, const CsvMetadata& meta = {});

/// Reads a single-run CSV back (comment lines skipped). Injection pairs are
/// restored as entries only; the sampled X_k are not part of the format.
MomentSeries read_series_csv(std::istream& in);
MomentSeries read_series_csv(const std::filesystem::path& path);

}  // namespace growpop
