#pragma once

// Nonparametric comparison of solver results across problems.

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace orchard {

struct WilcoxonResult {
  double r_plus = 0.0;
  double r_minus = 0.0;
  int n_effective = 0;
  double p_asymptotic = 1.0;
  /// Only computed for n_effective <= kWilcoxonExactLimit.
  std::optional<double> p_exact;
};

inline constexpr int kWilcoxonExactLimit = 25;

/// Signed-rank test on d = a - b. Zero differences are dropped, tied |d|
/// get average ranks, and the normal approximation uses the tie-corrected
/// variance. Needs equal lengths of at least 5.
WilcoxonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b);

/// Average ranks (1-based) of `values`; equal values share their mean rank.
/// Infinite values are ordinary maxima.
std::vector<double> average_ranks(std::span<const double> values);

struct FriedmanResult {
  std::vector<double> mean_ranks;
  double chi_square = 0.0;
  double p_value = 1.0;
};

/// rows = problems, columns = methods; lower is better.
FriedmanResult friedman(const std::vector<std::vector<double>>& results);

/// A problems x methods table as exchanged through CSV. Missing cells are
/// NaN.
struct ResultMatrix {
  std::vector<std::string> methods;
  std::vector<std::string> problems;
  std::vector<std::vector<double>> values;

  std::optional<std::size_t> column(const std::string& method) const;
};

/// First column holds problem names, the header row method names. A cell
/// may be a plain number, "inf", empty, or "mean (stddev)" in which case
/// the mean is taken.
ResultMatrix parse_matrix_csv(const std::string& text);
std::string matrix_csv(const ResultMatrix& m);

struct Comparison {
  std::string opponent;
  WilcoxonResult test;
  /// Problems where the opponent is better / worse / within tolerance.
  int better = 0;
  int worse = 0;
  int equal = 0;
  int skipped = 0;
};

/// Each other column against `baseline`: d = opponent - baseline, so R+
/// collects problems where the baseline is lower. Throws ConfigError when
/// the baseline column does not exist.
std::vector<Comparison> compare_to_baseline(const ResultMatrix& m, const std::string& baseline,
                                            double tolerance = 0.005);

std::string comparisons_csv(const std::vector<Comparison>& rows);
std::string comparisons_markdown(const std::vector<Comparison>& rows);
std::string friedman_csv(const ResultMatrix& m, const FriedmanResult& result);
std::string friedman_markdown(const ResultMatrix& m, const FriedmanResult& result);

}  // namespace orchard
