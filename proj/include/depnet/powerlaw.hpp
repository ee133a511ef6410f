#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <random>
#include <span>
#include <vector>

namespace depnet {

// Hurwitz zeta sum_{k>=0} (q + k)^-s for s > 1, q > 0; direct summation up to
// max(10, 2s) and an Euler-Maclaurin remainder (relative error < 1e-10).
double hurwitz_zeta(double s, double q);

// Same sum with every term divided by scale^-s, i.e. zeta(s, q) * scale^s.
// Ratios of tail masses stay representable for large s.
double scaled_hurwitz_zeta(double s, double q, double scale);

// Discrete maximum-likelihood exponent, by the usual approximation
// 1 + n_tail / sum ln(x / (xmin - 1/2)) over x >= xmin. Throws InputError with
// fewer than two tail observations or a zero value in the data.
double fit_alpha(std::span<const std::uint64_t> data, std::uint64_t xmin);

// Continuous MLE 1 + n_tail / sum ln(x / xmin), for cross-checks.
double fit_alpha_continuous(std::span<const std::uint64_t> data, std::uint64_t xmin);

// Kolmogorov-Smirnov distance between the empirical CDF of the tail x >= xmin
// and the discrete power law with the given exponent.
double ks_statistic(std::span<const std::uint64_t> data, std::uint64_t xmin, double alpha);

struct XminSelection {
  std::uint64_t xmin = 1;
  double alpha = 0.0;
  double ks_statistic = 1.0;
  std::size_t n_tail = 0;
};

// Tries every distinct value as cutoff (those leaving at least 10 tail
// observations, or at least 2 if none do) and keeps the one with the smallest
// KS distance, ties to the smaller cutoff. Throws InputError with fewer than
// two distinct values.
XminSelection select_xmin(std::span<const std::uint64_t> data);

// P(X = x) proportional to x^-alpha for integer x >= xmin, by exact
// inverse-CDF lookup.
class DiscretePowerLaw {
public:
  DiscretePowerLaw(double alpha, std::uint64_t xmin);

  double alpha() const noexcept { return alpha_; }
  std::uint64_t xmin() const noexcept { return xmin_; }

  double pmf(std::uint64_t x) const;
  // P(X >= x)
  double ccdf(std::uint64_t x) const;

  std::uint64_t operator()(std::mt19937_64& rng) const;

private:
  double alpha_;
  std::uint64_t xmin_;
  std::vector<double> table_;  // table_[i] = P(X >= xmin + i), decreasing
};

struct PowerLawFit {
  double alpha = 0.0;
  std::uint64_t xmin = 1;
  double ks_statistic = 0.0;
  double p_value = 0.0;
  std::size_t n_tail = 0;
  std::size_t bootstrap_n = 0;
};

// KS distances of `replicates` semiparametric bootstrap data sets, each
// refitted with select_xmin. Replicate r draws from derive_rng(seed, r).
std::vector<double> bootstrap_ks(std::span<const std::uint64_t> data, const PowerLawFit& fit,
                                 std::size_t replicates, std::uint64_t seed);

// Fraction of replicate KS distances >= observed.
double p_value_from(std::span<const double> replicate_ks, double observed);

// Goodness-of-fit p-value; throws InputError when replicates < 100.
double gof_pvalue(std::span<const std::uint64_t> data, const PowerLawFit& fit,
                  std::size_t replicates, std::uint64_t seed);

// select_xmin then gof_pvalue. Zero values are dropped first (isolated
// directions carry no power-law information). replicates == 0 skips the
// bootstrap and leaves p_value at 0.
PowerLawFit fit_power_law(std::span<const std::uint64_t> data, std::size_t replicates,
                          std::uint64_t seed);

struct DegreeDistributionRow {
  std::uint64_t degree = 0;
  std::size_t count = 0;
  double ccdf = 0.0;  // fraction of values >= degree
};

std::vector<DegreeDistributionRow> degree_distribution(std::span<const std::uint64_t> values);

// "degree,count,ccdf" header plus one row per distinct value, ascending.
void write_degree_distribution_csv(std::span<const DegreeDistributionRow> rows, std::ostream& out);

}  // namespace depnet
