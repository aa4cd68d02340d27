#include "orchard/stats.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <boost/math/special_functions/gamma.hpp>

#include "orchard/error.hpp"
#include "orchard/instances.hpp"

namespace orchard {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(std::string_view(line).substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_cell(const std::string& cell, int line) {
  std::string head = cell.substr(0, cell.find(' '));
  if (head.empty() || head == "NA" || head == "-") return kNaN;
  std::string low = head;
  std::transform(low.begin(), low.end(), low.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (low == "inf" || low == "+inf") return std::numeric_limits<double>::infinity();
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(head.data(), head.data() + head.size(), v);
  if (ec != std::errc() || ptr != head.data() + head.size()) {
    throw ParseError(line, "cell", "not a number: '" + cell + "'");
  }
  return v;
}

std::string number(double v) {
  if (std::isnan(v)) return "NA";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return format_number(v);
}

double normal_two_sided(double z) { return std::erfc(std::abs(z) / std::sqrt(2.0)); }

/// Two-sided exact p of the signed-rank statistic, ranks doubled to stay
/// integral under averaging.
double exact_signed_rank_p(const std::vector<double>& ranks, double r_plus) {
  std::vector<int> doubled;
  int total = 0;
  for (const double r : ranks) {
    doubled.push_back(static_cast<int>(std::lround(2.0 * r)));
    total += doubled.back();
  }
  std::vector<double> count(static_cast<std::size_t>(total) + 1, 0.0);
  count[0] = 1.0;
  int reach = 0;
  for (const int r : doubled) {
    for (int s = reach; s >= 0; --s) count[static_cast<std::size_t>(s + r)] += count[static_cast<std::size_t>(s)];
    reach += r;
  }
  const double all = std::ldexp(1.0, static_cast<int>(ranks.size()));
  const auto t = static_cast<int>(std::lround(2.0 * r_plus));
  double lower = 0.0;
  double upper = 0.0;
  for (int s = 0; s <= total; ++s) {
    if (s <= t) lower += count[static_cast<std::size_t>(s)];
    if (s >= t) upper += count[static_cast<std::size_t>(s)];
  }
  return std::min(1.0, 2.0 * std::min(lower, upper) / all);
}

}  // namespace

std::vector<double> average_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

WilcoxonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ConfigError("samples differ in length");
  if (a.size() < 5) throw ConfigError("signed-rank test needs at least 5 pairs");
  std::vector<double> diff;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::isnan(a[i]) || std::isnan(b[i])) throw ConfigError("signed-rank input contains NaN");
    if (a[i] == b[i]) continue;
    diff.push_back(a[i] - b[i]);
  }
  WilcoxonResult r;
  r.n_effective = static_cast<int>(diff.size());
  if (diff.empty()) {
    r.p_asymptotic = 1.0;
    r.p_exact = 1.0;
    return r;
  }
  std::vector<double> magnitude;
  for (const double d : diff) magnitude.push_back(std::abs(d));
  const auto ranks = average_ranks(magnitude);
  for (std::size_t i = 0; i < diff.size(); ++i) (diff[i] > 0 ? r.r_plus : r.r_minus) += ranks[i];

  const double n = r.n_effective;
  double tie_term = 0.0;
  auto sorted = magnitude;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const double t = static_cast<double>(j - i);
    tie_term += t * t * t - t;
    i = j;
  }
  const double mean = n * (n + 1.0) / 4.0;
  const double variance = n * (n + 1.0) * (2.0 * n + 1.0) / 24.0 - tie_term / 48.0;
  r.p_asymptotic = variance > 0.0 ? normal_two_sided((r.r_plus - mean) / std::sqrt(variance)) : 1.0;
  if (r.n_effective <= kWilcoxonExactLimit) r.p_exact = exact_signed_rank_p(ranks, r.r_plus);
  return r;
}

FriedmanResult friedman(const std::vector<std::vector<double>>& results) {
  if (results.size() < 2) throw ConfigError("Friedman test needs at least 2 problems");
  const std::size_t k = results.front().size();
  if (k < 2) throw ConfigError("Friedman test needs at least 2 methods");
  FriedmanResult f;
  f.mean_ranks.assign(k, 0.0);
  for (const auto& row : results) {
    if (row.size() != k) throw ConfigError("result rows differ in length");
    for (const double v : row) {
      if (std::isnan(v)) throw ConfigError("Friedman input contains NaN");
    }
    const auto ranks = average_ranks(row);
    for (std::size_t j = 0; j < k; ++j) f.mean_ranks[j] += ranks[j];
  }
  const double n = static_cast<double>(results.size());
  const double kk = static_cast<double>(k);
  double spread = 0.0;
  for (auto& r : f.mean_ranks) {
    r /= n;
    spread += (r - (kk + 1.0) / 2.0) * (r - (kk + 1.0) / 2.0);
  }
  f.chi_square = 12.0 * n / (kk * (kk + 1.0)) * spread;
  f.p_value = f.chi_square > 0.0 ? boost::math::gamma_q((kk - 1.0) / 2.0, f.chi_square / 2.0) : 1.0;
  return f;
}

std::optional<std::size_t> ResultMatrix::column(const std::string& method) const {
  const auto it = std::find(methods.begin(), methods.end(), method);
  if (it == methods.end()) return std::nullopt;
  return static_cast<std::size_t>(it - methods.begin());
}

ResultMatrix parse_matrix_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  ResultMatrix m;
  int line_no = 0;
  bool header = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto cells = split_commas(line);
    if (header) {
      if (cells.size() < 2) throw ParseError(line_no, "header", "need a problem column and methods");
      m.methods.assign(cells.begin() + 1, cells.end());
      header = false;
      continue;
    }
    if (cells.size() != m.methods.size() + 1) {
      throw ParseError(line_no, "row", "expected " + std::to_string(m.methods.size() + 1) + " cells");
    }
    m.problems.push_back(cells.front());
    std::vector<double> row;
    for (std::size_t j = 1; j < cells.size(); ++j) row.push_back(parse_cell(cells[j], line_no));
    m.values.push_back(std::move(row));
  }
  if (header) throw ParseError(line_no, "header", "empty matrix");
  return m;
}

std::string matrix_csv(const ResultMatrix& m) {
  std::ostringstream out;
  out << "problem";
  for (const auto& name : m.methods) out << ',' << name;
  out << '\n';
  for (std::size_t i = 0; i < m.problems.size(); ++i) {
    out << m.problems[i];
    for (const double v : m.values[i]) out << ',' << (std::isnan(v) ? "" : number(v));
    out << '\n';
  }
  return out.str();
}

std::vector<Comparison> compare_to_baseline(const ResultMatrix& m, const std::string& baseline,
                                            double tolerance) {
  const auto base = m.column(baseline);
  if (!base) throw ConfigError("baseline column '" + baseline + "' not found");
  std::vector<Comparison> rows;
  for (std::size_t j = 0; j < m.methods.size(); ++j) {
    if (j == *base) continue;
    Comparison c;
    c.opponent = m.methods[j];
    std::vector<double> a;
    std::vector<double> b;
    for (const auto& row : m.values) {
      const double o = row[j];
      const double s = row[*base];
      if (std::isnan(o) || std::isnan(s)) {
        ++c.skipped;
        continue;
      }
      if (o == s || std::abs(o - s) <= tolerance * std::max(std::abs(o), std::abs(s))) {
        ++c.equal;
      } else if (o < s) {
        ++c.better;
      } else {
        ++c.worse;
      }
      // Two infinite entries are a tie, not an undefined difference.
      a.push_back(std::isinf(o) && std::isinf(s) ? 0.0 : o);
      b.push_back(std::isinf(o) && std::isinf(s) ? 0.0 : s);
    }
    if (a.size() >= 5) {
      c.test = wilcoxon_signed_rank(a, b);
    } else {
      c.test.p_asymptotic = std::numeric_limits<double>::quiet_NaN();
    }
    rows.push_back(std::move(c));
  }
  return rows;
}

std::string comparisons_csv(const std::vector<Comparison>& rows) {
  std::ostringstream out;
  out << "VS,R+,R-,n_eff,asymptotic_p,exact_p,better,worse,equal,skipped\n";
  for (const auto& c : rows) {
    out << c.opponent << ',' << number(c.test.r_plus) << ',' << number(c.test.r_minus) << ','
        << c.test.n_effective << ',' << number(c.test.p_asymptotic) << ','
        << (c.test.p_exact ? number(*c.test.p_exact) : "NA") << ',' << c.better << ','
        << c.worse << ',' << c.equal << ',' << c.skipped << '\n';
  }
  return out.str();
}

std::string comparisons_markdown(const std::vector<Comparison>& rows) {
  std::ostringstream out;
  out << "| VS | R⁺ | R⁻ | Asymptotic P-value | +/-/= |\n";
  out << "|---|---|---|---|---|\n";
  for (const auto& c : rows) {
    out << "| " << c.opponent << " | " << number(c.test.r_plus) << " | "
        << number(c.test.r_minus) << " | " << number(c.test.p_asymptotic) << " | " << c.better
        << '/' << c.worse << '/' << c.equal << " |\n";
  }
  return out.str();
}

std::string friedman_csv(const ResultMatrix& m, const FriedmanResult& result) {
  std::ostringstream out;
  out << "method,mean_rank\n";
  for (std::size_t j = 0; j < m.methods.size(); ++j) {
    out << m.methods[j] << ',' << number(result.mean_ranks[j]) << '\n';
  }
  out << "chi_square," << number(result.chi_square) << '\n';
  out << "p_value," << number(result.p_value) << '\n';
  return out.str();
}

std::string friedman_markdown(const ResultMatrix& m, const FriedmanResult& result) {
  std::ostringstream out;
  out << "| Method | Mean rank |\n|---|---|\n";
  for (std::size_t j = 0; j < m.methods.size(); ++j) {
    out << "| " << m.methods[j] << " | " << number(result.mean_ranks[j]) << " |\n";
  }
  out << "\nχ² = " << number(result.chi_square) << ", p = " << number(result.p_value) << '\n';
  return out.str();
}

}  // namespace orchard
