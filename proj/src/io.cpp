#include "guefield/io.hpp"

#include <cstdio>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace guefield {

std::string format_float(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

namespace {

void write_cell(std::ostream& out, const nlohmann::ordered_json& cell) {
  if (cell.is_null()) return;
  if (cell.is_number_float()) {
    out << format_float(cell.get<double>());
  } else if (cell.is_string()) {
    out << cell.get<std::string>();
  } else {
    out << cell.dump();
  }
}

}  // namespace

void write_csv(std::ostream& out, const Table& table) {
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c > 0) out << ',';
    out << table.columns[c];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) out << ',';
      write_cell(out, row[c]);
    }
    out << '\n';
  }
}

void write_json(std::ostream& out, const Table& table) {
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["kind"] = table.kind;
  j["columns"] = table.columns;
  j["rows"] = table.rows;
  out << j.dump(2) << '\n';
}

void write_table(std::ostream& out, const Table& table, const std::string& format) {
  if (format == "csv") {
    write_csv(out, table);
  } else if (format == "json") {
    write_json(out, table);
  } else {
    throw std::invalid_argument("unknown format: " + format);
  }
}

Table partition_table(const SemicirclePartition& partition) {
  Table table{"partition", {"j", "gamma_j", "cell_mean_j", "cell_density_j"}, {}};
  for (int j = 0; j <= partition.n; ++j) {
    table.rows.push_back({j, partition.gamma[j],
                          j >= 1 ? nlohmann::ordered_json(partition.cell_mean[j - 1])
                                 : nlohmann::ordered_json(nullptr),
                          partition.cell_density[j]});
  }
  return table;
}

Table spectra_table(const std::vector<Spectrum>& spectra) {
  Table table{"spectra", {"replica", "j", "lambda_j"}, {}};
  for (std::size_t r = 0; r < spectra.size(); ++r) {
    for (int j = 0; j < spectra[r].n; ++j) {
      table.rows.push_back({r, j + 1, spectra[r].lambda[j]});
    }
  }
  return table;
}

Table field_table(const FluctuationField& field) {
  Table table{"field", {"j", "gamma_j", "value_j"}, {}};
  for (int j = 0; j < field.partition->n; ++j) {
    table.rows.push_back({j + 1, field.partition->gamma[j + 1], field.values[j]});
  }
  return table;
}

Table coeffs_table(const EnsembleSummary& summary) {
  Table table{"coeffs", {"replica", "k", "s_k", "pi_s_k"}, {}};
  for (int i = 0; i < summary.pi_coeffs.rows(); ++i) {
    for (int k = 0; k < summary.pi_coeffs.cols(); ++k) {
      const double pi_s = summary.pi_coeffs(i, k);
      table.rows.push_back({i, k, pi_s / std::numbers::pi, pi_s});
    }
  }
  return table;
}

Table profile_table(const EnsembleSummary& summary) {
  Table table{"profile", {"replica", "j", "deviation"}, {}};
  for (int i = 0; i < summary.deviations.rows(); ++i) {
    for (int p = 0; p < summary.deviations.cols(); ++p) {
      table.rows.push_back({i, summary.profile_indices[p], summary.deviations(i, p)});
    }
  }
  return table;
}

Table moments_table(const MomentTable& moment_table, int n) {
  Table table{"moments", {"j", "b_j", "power_trace_2j", "cheb_trace_j"}, {}};
  for (int j = 0; j < moment_table.b.size(); ++j) {
    table.rows.push_back({j, moment_table.b[j], expected_power_trace(j, n),
                          expected_cheb_trace(j, n)});
  }
  return table;
}

nlohmann::ordered_json summary_to_json(const EnsembleSummary& summary) {
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["kind"] = "ensemble_summary";

  nlohmann::ordered_json config;
  config["n"] = summary.n;
  config["replicas"] = summary.replicas;
  config["kmax"] = summary.kmax;
  config["seed"] = summary.seed;
  config["sampler"] = sampler_name(summary.sampler);
  config["alpha"] = summary.alpha;
  config["grid"] = summary.grid;
  config["profile_indices"] = summary.profile_indices;
  if (summary.counting_kmax > 0) config["counting_kmax"] = summary.counting_kmax;
  j["config"] = config;

  nlohmann::ordered_json coeffs;
  coeffs["mean"] = std::vector<double>(summary.coeff_mean.data(),
                                       summary.coeff_mean.data() + summary.coeff_mean.size());
  coeffs["var"] = std::vector<double>(summary.coeff_var.data(),
                                      summary.coeff_var.data() + summary.coeff_var.size());
  std::vector<double> var_normalized(summary.coeff_var.size());
  for (int k = 0; k < summary.coeff_var.size(); ++k) {
    var_normalized[k] = (k + 1) * summary.coeff_var[k];
  }
  coeffs["var_normalized"] = var_normalized;
  coeffs["ks_stat"] = std::vector<double>(summary.ks_stat.data(),
                                          summary.ks_stat.data() + summary.ks_stat.size());
  coeffs["ks_pvalue"] = std::vector<double>(summary.ks_pvalue.data(),
                                            summary.ks_pvalue.data() + summary.ks_pvalue.size());
  j["coeffs"] = coeffs;

  std::vector<std::vector<double>> cov(summary.coeff_cov.rows(),
                                       std::vector<double>(summary.coeff_cov.cols()));
  for (int r = 0; r < summary.coeff_cov.rows(); ++r) {
    for (int c = 0; c < summary.coeff_cov.cols(); ++c) cov[r][c] = summary.coeff_cov(r, c);
  }
  j["covariance"] = cov;

  nlohmann::ordered_json profile;
  profile["j"] = summary.profile_indices;
  profile["var"] = std::vector<double>(summary.profile_var.data(),
                                       summary.profile_var.data() + summary.profile_var.size());
  j["profile"] = profile;

  nlohmann::ordered_json linear = nlohmann::ordered_json::array();
  for (const auto& stat : summary.linear_stats) {
    linear.push_back({{"degree", stat.degree},
                      {"second_moment", stat.second_moment},
                      {"theory", stat.theory}});
  }
  j["linear_stats"] = linear;

  nlohmann::ordered_json kernel = nlohmann::ordered_json::array();
  for (const auto& entry : summary.kernel) {
    kernel.push_back({{"x", entry.x},
                      {"y", entry.y},
                      {"empirical", entry.empirical},
                      {"closed", entry.closed},
                      {"std_error", entry.std_error}});
  }
  j["kernel"] = kernel;

  j["sobolev_mean"] = summary.sobolev_mean;
  if (summary.proximity_distance.size() > 0) {
    j["proximity_median"] = summary.proximity_median;
  }
  return j;
}

}  // namespace guefield
