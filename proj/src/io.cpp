#include "lbs/io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>

#include "lbs/dataset.hpp"
#include "lbs/error.hpp"

namespace lbs {
namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) {
    while (!field.empty() && (field.back() == '\r' || field.back() == ' ')) field.pop_back();
    out.push_back(field);
  }
  return out;
}

template <class T>
T parse_number(const std::string& s, std::size_t line) {
  T value{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError(line, "malformed number '" + s + "'");
  }
  return value;
}

}  // namespace

void write_draws_csv(std::ostream& out, const std::vector<PosteriorDraw>& draws) {
  const std::size_t strata = draws.empty() ? 0 : draws.front().betas.size();
  out << "alpha,gamma";
  for (std::size_t i = 0; i < strata; ++i) out << ",beta" << (i + 1);
  out << '\n';
  for (const auto& d : draws) {
    out << format_double(d.alpha) << ',' << format_double(d.gamma_shape);
    for (double b : d.betas) out << ',' << format_double(b);
    out << '\n';
  }
}

std::vector<PosteriorDraw> read_draws_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw ParseError(1, "empty draws file");
  ++line_no;
  const auto header = split(line);
  if (header.size() < 3 || header[0] != "alpha" || header[1] != "gamma") {
    throw ParseError(line_no, "expected header 'alpha,gamma,beta1,...'");
  }
  const std::size_t strata = header.size() - 2;
  std::vector<PosteriorDraw> draws;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto f = split(line);
    if (f.size() != header.size()) throw ParseError(line_no, "wrong field count");
    std::vector<double> betas(strata);
    for (std::size_t i = 0; i < strata; ++i) betas[i] = parse_number<double>(f[i + 2], line_no);
    const double alpha = parse_number<double>(f[0], line_no);
    const double gamma = parse_number<double>(f[1], line_no);
    if (!(alpha > 0.0) || !(gamma > 0.0)) throw ParseError(line_no, "non-positive shape");
    for (double b : betas) {
      if (!(b > 0.0)) throw ParseError(line_no, "non-positive beta");
    }
    draws.push_back(PosteriorDraw::from_betas(alpha, gamma, std::move(betas)));
  }
  if (draws.empty()) throw ParseError(line_no, "draws file has no rows");
  return draws;
}

void write_means_csv(std::ostream& out, const std::vector<PopulationMeanDraw>& means) {
  const std::size_t strata = means.empty() ? 0 : means.front().sizes.size();
  out << "mean,log_weight,sample_fraction,source_draw";
  for (std::size_t i = 0; i < strata; ++i) out << ",N" << (i + 1);
  out << '\n';
  for (const auto& m : means) {
    out << format_double(m.mean) << ',' << format_double(m.log_weight) << ','
        << format_double(m.sample_fraction) << ',' << m.source_draw;
    for (auto n : m.sizes) out << ',' << n;
    out << '\n';
  }
}

std::vector<PopulationMeanDraw> read_means_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw ParseError(1, "empty means file");
  const auto header = split(line);
  if (header.size() < 4 || header[0] != "mean") throw ParseError(1, "unexpected means header");
  std::vector<PopulationMeanDraw> out;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != header.size()) throw ParseError(line_no, "wrong field count");
    PopulationMeanDraw m{};
    m.mean = parse_number<double>(f[0], line_no);
    m.log_weight = parse_number<double>(f[1], line_no);
    m.sample_fraction = parse_number<double>(f[2], line_no);
    m.source_draw = parse_number<std::size_t>(f[3], line_no);
    for (std::size_t i = 4; i < f.size(); ++i) m.sizes.push_back(parse_number<std::uint64_t>(f[i], line_no));
    out.push_back(std::move(m));
  }
  return out;
}

void write_histogram_csv(std::ostream& out, const Histogram& h) {
  out << "bin_lower,bin_upper,count\n";
  for (std::size_t k = 0; k < h.counts.size(); ++k) {
    out << format_double(h.edges[k]) << ',' << format_double(h.edges[k + 1]) << ',' << h.counts[k]
        << '\n';
  }
}

}  // namespace lbs
