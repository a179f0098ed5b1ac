#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace lbs {

struct Stratum {
  std::string label;
  std::vector<double> widths;  // meters
};

// Stratified line-intercept sample of one replication. Immutable once built;
// the constructor enforces: >= 1 stratum, every stratum non-empty, every
// width in (0, W).
class TransectData {
 public:
  TransectData(std::vector<Stratum> strata, double baseline_length,
               std::string replication = "1");

  const std::vector<Stratum>& strata() const noexcept { return strata_; }
  std::size_t stratum_count() const noexcept { return strata_.size(); }
  double baseline_length() const noexcept { return baseline_; }
  const std::string& replication() const noexcept { return replication_; }

  std::vector<std::size_t> stratum_sizes() const;
  std::size_t total_size() const;
  std::vector<double> all_widths() const;
  double sample_mean() const;

 private:
  std::vector<Stratum> strata_;
  double baseline_;
  std::string replication_;
};

/// Reads CSV with header `replication,transect,width`. Rows are grouped by
/// transect in order of first appearance. When the file holds more than one
/// replication, `replication` selects which one to keep.
TransectData load_transects(std::istream& source, double baseline_length,
                            const std::optional<std::string>& replication = std::nullopt);

TransectData load_transects_file(const std::string& path, double baseline_length,
                                 const std::optional<std::string>& replication = std::nullopt);

/// Writes the same CSV layout with shortest round-trip decimals.
void write_transects(std::ostream& out, const TransectData& data);

enum class Replication { One, Two };

/// Transcribed shrub widths of the quarry study, W = 125 m.
TransectData embedded_replication(Replication which);

// Per-stratum statistics of x^gamma.
struct StratumSummary {
  std::size_t n;
  double arith_mean_pow;  // a_i
  double geom_mean_pow;   // g_i, via the mean of logs
  double sum_pow;         // Σ x^gamma
  double sum_log;         // Σ ln x (gamma-free)
  double log_sum_pow;     // ln Σ x^gamma, finite even when sum_pow overflows
  double log_arith_mean_pow;
  double log_geom_mean_pow;
};

std::vector<StratumSummary> stratum_summaries(const TransectData& data, double gamma_shape);

// Shortest decimal string that parses back to exactly `value`.
std::string format_double(double value);

}  // namespace lbs
