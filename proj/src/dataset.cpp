#include "lbs/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>

#include "lbs/error.hpp"
#include "lbs/numerics.hpp"

namespace lbs {

TransectData::TransectData(std::vector<Stratum> strata, double baseline_length,
                           std::string replication)
    : strata_(std::move(strata)), baseline_(baseline_length), replication_(std::move(replication)) {
  if (!(baseline_ > 0.0) || !std::isfinite(baseline_)) {
    throw ValidationError("baseline length W must be positive and finite");
  }
  if (strata_.empty()) {
    throw ValidationError("transect data needs at least one stratum");
  }
  for (const auto& s : strata_) {
    if (s.widths.empty()) {
      throw ValidationError("stratum '" + s.label + "' has no observations");
    }
    for (double x : s.widths) {
      if (!(x > 0.0) || !std::isfinite(x)) {
        throw ValidationError("stratum '" + s.label + "': width " + format_double(x) +
                              " is not positive");
      }
      if (x >= baseline_) {
        throw ValidationError("stratum '" + s.label + "': width " + format_double(x) +
                              " is not below the baseline length " + format_double(baseline_));
      }
    }
  }
}

std::vector<std::size_t> TransectData::stratum_sizes() const {
  std::vector<std::size_t> sizes;
  sizes.reserve(strata_.size());
  for (const auto& s : strata_) sizes.push_back(s.widths.size());
  return sizes;
}

std::size_t TransectData::total_size() const {
  std::size_t n = 0;
  for (const auto& s : strata_) n += s.widths.size();
  return n;
}

std::vector<double> TransectData::all_widths() const {
  std::vector<double> out;
  out.reserve(total_size());
  for (const auto& s : strata_) out.insert(out.end(), s.widths.begin(), s.widths.end());
  return out;
}

double TransectData::sample_mean() const {
  CompensatedSum sum;
  for (const auto& s : strata_)
    for (double x : s.widths) sum.add(x);
  return sum.value() / static_cast<double>(total_size());
}

namespace {

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(',', start);
    fields.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return fields;
}

struct Row {
  std::string replication;
  std::string transect;
  double width;
  std::size_t line;
};

}  // namespace

TransectData load_transects(std::istream& source, double baseline_length,
                            const std::optional<std::string>& replication) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::vector<Row> rows;

  while (std::getline(source, line)) {
    ++line_no;
    const auto content = trim(line);
    if (content.empty()) continue;
    const auto fields = split_commas(content);
    if (!have_header) {
      if (fields.size() != 3 || fields[0] != "replication" || fields[1] != "transect" ||
          fields[2] != "width") {
        throw ParseError(line_no, "expected header 'replication,transect,width'");
      }
      have_header = true;
      continue;
    }
    if (fields.size() != 3) {
      throw ParseError(line_no, "expected 3 fields, found " + std::to_string(fields.size()));
    }
    if (fields[0].empty() || fields[1].empty()) {
      throw ParseError(line_no, "empty replication or transect label");
    }
    double width = 0.0;
    const auto w = fields[2];
    const auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), width);
    if (ec != std::errc() || ptr != w.data() + w.size()) {
      throw ParseError(line_no, "malformed width '" + std::string(w) + "'");
    }
    rows.push_back({std::string(fields[0]), std::string(fields[1]), width, line_no});
  }
  if (!have_header) {
    throw ParseError(line_no, "empty input");
  }

  std::string chosen;
  if (replication) {
    chosen = *replication;
  } else if (!rows.empty()) {
    chosen = rows.front().replication;
    for (const auto& r : rows) {
      if (r.replication != chosen) {
        throw ParseError(r.line, "several replications in one file; select one explicitly");
      }
    }
  }

  std::vector<Stratum> strata;
  for (const auto& r : rows) {
    if (r.replication != chosen) continue;
    auto it = std::find_if(strata.begin(), strata.end(),
                           [&](const Stratum& s) { return s.label == r.transect; });
    if (it == strata.end()) {
      strata.push_back({r.transect, {}});
      it = std::prev(strata.end());
    }
    it->widths.push_back(r.width);
  }
  if (strata.empty()) {
    throw ParseError(line_no, replication ? "no rows for replication '" + chosen + "'"
                                          : std::string("no data rows"));
  }
  return TransectData(std::move(strata), baseline_length, chosen);
}

TransectData load_transects_file(const std::string& path, double baseline_length,
                                 const std::optional<std::string>& replication) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open data file '" + path + "'");
  }
  return load_transects(in, baseline_length, replication);
}

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ec == std::errc() ? ptr : buf);
}

void write_transects(std::ostream& out, const TransectData& data) {
  out << "replication,transect,width\n";
  for (const auto& s : data.strata()) {
    for (double x : s.widths) {
      out << data.replication() << ',' << s.label << ',' << format_double(x) << '\n';
    }
  }
}

TransectData embedded_replication(Replication which) {
  constexpr double kBaseline = 125.0;
  if (which == Replication::One) {
    return TransectData(
        {{"I",
          {1.53, 0.87, 0.79, 0.78, 1.85, 1.45, 0.48, 0.52, 0.22, 0.38, 0.59, 0.20,
           0.42, 1.02, 0.97, 0.56, 0.62, 0.42}},
         {"II",
          {1.15, 0.87, 0.57, 0.97, 0.57, 1.97, 0.58, 2.54, 1.85, 0.35, 1.24,
           1.80, 0.78, 0.98, 1.30, 1.55, 1.69, 2.12, 1.27, 0.75, 1.01, 1.82}},
         {"III", {0.71, 1.50, 1.82, 1.86, 1.61, 1.21}}},
        kBaseline, "1");
  }
  return TransectData(
      {{"I",
        {0.67, 0.31, 0.83, 1.95, 1.36, 1.45, 0.72, 1.15, 0.98, 1.29, 0.88,
         0.25, 0.63, 1.12, 0.34, 0.21, 1.36, 0.95, 1.04, 0.48, 1.05, 0.88,
         0.16, 1.08, 0.95, 0.25, 0.30, 1.40, 0.58, 0.73, 1.30, 0.57}},
       {"II", {0.96, 2.08, 0.68, 1.39, 0.50, 0.72, 0.19, 1.91, 0.88, 0.48, 0.12}}},
      kBaseline, "2");
}

std::vector<StratumSummary> stratum_summaries(const TransectData& data, double gamma_shape) {
  if (!(gamma_shape > 0.0) || !std::isfinite(gamma_shape)) {
    throw DomainError("stratum_summaries: gamma must be positive");
  }
  std::vector<StratumSummary> out;
  out.reserve(data.stratum_count());
  for (const auto& s : data.strata()) {
    CompensatedSum sum_log;
    std::vector<double> log_terms;
    log_terms.reserve(s.widths.size());
    for (double x : s.widths) {
      const double lx = std::log(x);
      sum_log.add(lx);
      log_terms.push_back(gamma_shape * lx);
    }
    const double n = static_cast<double>(s.widths.size());
    StratumSummary summary{};
    summary.n = s.widths.size();
    summary.sum_log = sum_log.value();
    summary.log_sum_pow = log_sum_exp(log_terms);
    summary.log_arith_mean_pow = summary.log_sum_pow - std::log(n);
    // AM–GM holds exactly; clamp the rounding noise of equal widths.
    summary.log_geom_mean_pow = std::min(gamma_shape * summary.sum_log / n, summary.log_arith_mean_pow);
    summary.sum_pow = std::exp(summary.log_sum_pow);
    summary.arith_mean_pow = std::exp(summary.log_arith_mean_pow);
    summary.geom_mean_pow = std::exp(summary.log_geom_mean_pow);
    out.push_back(summary);
  }
  return out;
}

}  // namespace lbs
