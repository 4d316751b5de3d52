#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "guefield/field.hpp"
#include "guefield/harness.hpp"
#include "guefield/moments.hpp"
#include "guefield/semicircle.hpp"

namespace guefield {

// Shortest round-trip decimal form of a double (17 significant digits).
std::string format_float(double value);

// Tabular payload that serializes identically on every run: CSV with LF
// endings and one header row, or a JSON wrapper with the same cells.
struct Table {
  std::string kind;
  std::vector<std::string> columns;
  std::vector<std::vector<nlohmann::ordered_json>> rows;
};

void write_csv(std::ostream& out, const Table& table);
void write_json(std::ostream& out, const Table& table);
void write_table(std::ostream& out, const Table& table, const std::string& format);

Table partition_table(const SemicirclePartition& partition);
Table spectra_table(const std::vector<Spectrum>& spectra);
Table field_table(const FluctuationField& field);

// Per-replica coefficient rows (replica, k, s_k, pi_s_k); the variances in
// the summary are recomputable from this payload.
Table coeffs_table(const EnsembleSummary& summary);

// Per-replica eigenvalue deviations at the profile indices.
Table profile_table(const EnsembleSummary& summary);

Table moments_table(const MomentTable& table, int n);

// Stable-key-order JSON payload of the reductions (raw per-replica matrices
// and wall-clock runtime are excluded so identical configs serialize to
// identical bytes).
nlohmann::ordered_json summary_to_json(const EnsembleSummary& summary);

}  // namespace guefield
