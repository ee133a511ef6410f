#include "depnet/powerlaw.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <thread>

#include "depnet/error.hpp"
#include "depnet/random.hpp"

namespace depnet {

double scaled_hurwitz_zeta(double s, double q, double scale) {
  if (!(s > 1.0)) throw InputError("zeta: exponent must exceed 1");
  if (!(q > 0.0) || !(scale > 0.0)) throw InputError("zeta: q and scale must be positive");
  auto term = [&](double x) { return std::exp(-s * std::log(x / scale)); };

  const double direct_limit = std::max(10.0, 2.0 * s);
  double sum = 0.0;
  double x = q;
  for (; x < direct_limit; x += 1.0) sum += term(x);

  // Euler-Maclaurin remainder for sum_{k>=0} f(x + k), f(t) = (t/scale)^-s
  static constexpr double kBernoulli[] = {1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66};
  const double fa = term(x);
  double remainder = x / (s - 1.0) + 0.5;
  double rising = s;  // s (s+1) ... (s+2j-2)
  double inv_pow = 1.0 / x;
  double factorial = 2.0;
  for (int j = 1; j <= 5; ++j) {
    remainder += kBernoulli[j - 1] / factorial * rising * inv_pow;
    rising *= (s + 2.0 * j - 1.0) * (s + 2.0 * j);
    inv_pow /= x * x;
    factorial *= (2.0 * j + 1.0) * (2.0 * j + 2.0);
  }
  return sum + fa * remainder;
}

double hurwitz_zeta(double s, double q) { return scaled_hurwitz_zeta(s, q, 1.0); }

namespace {

struct Histogram {
  std::vector<std::uint64_t> values;  // distinct, ascending
  std::vector<std::size_t> counts;
  std::vector<std::size_t> tail_n;    // observations >= values[i]
  std::vector<double> tail_log;       // sum of ln x over observations >= values[i]
};

Histogram histogram(std::span<const std::uint64_t> data) {
  std::vector<std::uint64_t> sorted(data.begin(), data.end());
  std::sort(sorted.begin(), sorted.end());
  if (!sorted.empty() && sorted.front() == 0) {
    throw InputError("power-law data must be positive integers");
  }
  Histogram h;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    h.values.push_back(sorted[i]);
    h.counts.push_back(j - i);
    i = j;
  }
  const std::size_t d = h.values.size();
  h.tail_n.assign(d + 1, 0);
  h.tail_log.assign(d + 1, 0.0);
  for (std::size_t i = d; i-- > 0;) {
    h.tail_n[i] = h.tail_n[i + 1] + h.counts[i];
    h.tail_log[i] = h.tail_log[i + 1] +
                    static_cast<double>(h.counts[i]) * std::log(static_cast<double>(h.values[i]));
  }
  return h;
}

double alpha_at(const Histogram& h, std::size_t j) {
  const double n = static_cast<double>(h.tail_n[j]);
  const double shifted = static_cast<double>(h.values[j]) - 0.5;
  return 1.0 + n / (h.tail_log[j] - n * std::log(shifted));
}

// KS distance for the tail starting at distinct value j.
double ks_at(const Histogram& h, std::size_t j, double alpha) {
  const double xmin = static_cast<double>(h.values[j]);
  const double n_tail = static_cast<double>(h.tail_n[j]);
  auto f = [&](double x) { return std::exp(-alpha * std::log(x / xmin)); };
  const double total = scaled_hurwitz_zeta(alpha, xmin, xmin);

  double remaining = total;  // scaled zeta(alpha, current value)
  double cum = 0.0;
  double d = 0.0;
  for (std::size_t i = j; i < h.values.size(); ++i) {
    const double v = static_cast<double>(h.values[i]);
    cum += static_cast<double>(h.counts[i]);
    const double empirical = cum / n_tail;
    double after = remaining - f(v);  // zeta(alpha, v + 1)
    d = std::max(d, std::abs(empirical - (1.0 - after / total)));
    if (i + 1 == h.values.size()) break;
    const std::uint64_t gap = h.values[i + 1] - h.values[i] - 1;
    if (gap == 0) {
      remaining = after;
      continue;
    }
    if (gap <= 16) {
      for (double x = v + 1.0; x < static_cast<double>(h.values[i + 1]); x += 1.0) after -= f(x);
      remaining = after;
    } else {
      remaining = scaled_hurwitz_zeta(alpha, static_cast<double>(h.values[i + 1]), xmin);
    }
    // empirical CDF is flat up to the next value while the model keeps rising
    d = std::max(d, std::abs(empirical - (1.0 - remaining / total)));
  }
  return d;
}

std::size_t index_of(const Histogram& h, std::uint64_t xmin) {
  auto it = std::lower_bound(h.values.begin(), h.values.end(), xmin);
  return static_cast<std::size_t>(it - h.values.begin());
}

template <class Fn>
void parallel_for(std::size_t count, Fn&& fn) {
  const std::size_t workers =
      std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> threads;
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += workers) fn(i);
    });
  }
  for (auto& t : threads) t.join();
}

}  // namespace

double fit_alpha(std::span<const std::uint64_t> data, std::uint64_t xmin) {
  if (xmin < 1) throw InputError("xmin must be >= 1");
  std::size_t n = 0;
  double log_sum = 0.0;
  const double shifted = static_cast<double>(xmin) - 0.5;
  for (auto x : data) {
    if (x == 0) throw InputError("power-law data must be positive integers");
    if (x < xmin) continue;
    ++n;
    log_sum += std::log(static_cast<double>(x) / shifted);
  }
  if (n < 2) throw InputError("fit_alpha: fewer than two observations >= xmin");
  return 1.0 + static_cast<double>(n) / log_sum;
}

double fit_alpha_continuous(std::span<const std::uint64_t> data, std::uint64_t xmin) {
  if (xmin < 1) throw InputError("xmin must be >= 1");
  std::size_t n = 0;
  double log_sum = 0.0;
  for (auto x : data) {
    if (x < xmin) continue;
    ++n;
    log_sum += std::log(static_cast<double>(x) / static_cast<double>(xmin));
  }
  if (n < 2 || log_sum <= 0.0) throw InputError("fit_alpha_continuous: degenerate tail");
  return 1.0 + static_cast<double>(n) / log_sum;
}

double ks_statistic(std::span<const std::uint64_t> data, std::uint64_t xmin, double alpha) {
  Histogram h = histogram(data);
  std::size_t j = index_of(h, xmin);
  if (j == h.values.size()) throw InputError("ks_statistic: no observations >= xmin");
  // a cutoff between observed values behaves like the next observed value,
  // except that the model mass starts at xmin itself
  if (h.values[j] != xmin) {
    Histogram shifted = h;
    shifted.values.insert(shifted.values.begin() + static_cast<std::ptrdiff_t>(j), xmin);
    shifted.counts.insert(shifted.counts.begin() + static_cast<std::ptrdiff_t>(j), 0);
    shifted.tail_n.insert(shifted.tail_n.begin() + static_cast<std::ptrdiff_t>(j), h.tail_n[j]);
    shifted.tail_log.insert(shifted.tail_log.begin() + static_cast<std::ptrdiff_t>(j),
                            h.tail_log[j]);
    return ks_at(shifted, j, alpha);
  }
  return ks_at(h, j, alpha);
}

XminSelection select_xmin(std::span<const std::uint64_t> data) {
  Histogram h = histogram(data);
  if (h.values.size() < 2) throw InputError("select_xmin: fewer than two distinct values");

  // the largest value is never a cutoff: its tail has a single support point
  const std::size_t last = h.values.size() - 1;
  const std::size_t min_tail = h.tail_n[0] >= 10 ? 10 : 2;

  XminSelection best;
  best.ks_statistic = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < last; ++j) {
    if (h.tail_n[j] < min_tail) break;  // tail_n is decreasing
    const double alpha = alpha_at(h, j);
    const double ks = ks_at(h, j, alpha);
    if (ks < best.ks_statistic) {
      best = {h.values[j], alpha, ks, h.tail_n[j]};
    }
  }
  return best;
}

DiscretePowerLaw::DiscretePowerLaw(double alpha, std::uint64_t xmin) : alpha_(alpha), xmin_(xmin) {
  if (!(alpha > 1.0)) throw InputError("power law exponent must exceed 1");
  if (xmin < 1) throw InputError("xmin must be >= 1");
  constexpr std::size_t kTable = 1 << 16;
  const double x0 = static_cast<double>(xmin);
  const double total = scaled_hurwitz_zeta(alpha, x0, x0);
  table_.resize(kTable);
  // accumulate from the far end so that small tail masses keep their precision
  double tail = scaled_hurwitz_zeta(alpha, x0 + static_cast<double>(kTable), x0);
  for (std::size_t i = kTable; i-- > 0;) {
    tail += std::exp(-alpha * std::log((x0 + static_cast<double>(i)) / x0));
    table_[i] = tail / total;
  }
  table_[0] = 1.0;
}

double DiscretePowerLaw::pmf(std::uint64_t x) const {
  if (x < xmin_) return 0.0;
  const double x0 = static_cast<double>(xmin_);
  return std::exp(-alpha_ * std::log(static_cast<double>(x) / x0)) /
         scaled_hurwitz_zeta(alpha_, x0, x0);
}

double DiscretePowerLaw::ccdf(std::uint64_t x) const {
  if (x <= xmin_) return 1.0;
  if (x - xmin_ < table_.size()) return table_[x - xmin_];
  const double x0 = static_cast<double>(xmin_);
  return scaled_hurwitz_zeta(alpha_, static_cast<double>(x), x0) /
         scaled_hurwitz_zeta(alpha_, x0, x0);
}

std::uint64_t DiscretePowerLaw::operator()(std::mt19937_64& rng) const {
  const double u = uniform_open_closed(rng);
  // X = largest x with P(X >= x) >= u
  auto first_below = std::partition_point(table_.begin(), table_.end(),
                                          [u](double c) { return c >= u; });
  if (first_below != table_.end()) {
    return xmin_ + static_cast<std::uint64_t>(first_below - table_.begin()) - 1;
  }
  std::uint64_t lo = xmin_ + table_.size() - 1;
  std::uint64_t step = table_.size();
  std::uint64_t hi = lo + step;
  constexpr std::uint64_t kCap = std::uint64_t{1} << 62;
  while (ccdf(hi) >= u) {
    if (hi >= kCap) return hi;
    lo = hi;
    step *= 2;
    hi = lo + step;
  }
  while (hi - lo > 1) {
    std::uint64_t mid = lo + (hi - lo) / 2;
    if (ccdf(mid) >= u) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

std::vector<double> bootstrap_ks(std::span<const std::uint64_t> data, const PowerLawFit& fit,
                                 std::size_t replicates, std::uint64_t seed) {
  std::vector<std::uint64_t> below;
  std::size_t n_tail = 0;
  for (auto x : data) {
    if (x >= fit.xmin) {
      ++n_tail;
    } else {
      below.push_back(x);
    }
  }
  if (n_tail == 0) throw InputError("bootstrap: no observations >= xmin");
  std::sort(below.begin(), below.end());
  const DiscretePowerLaw model(fit.alpha, fit.xmin);
  const double p_tail = static_cast<double>(n_tail) / static_cast<double>(data.size());

  std::vector<double> ks(replicates, 0.0);
  parallel_for(replicates, [&](std::size_t r) {
    auto rng = derive_rng(seed, r);
    std::vector<std::uint64_t> sample(data.size());
    for (auto& x : sample) {
      if (below.empty() || uniform_unit(rng) < p_tail) {
        x = model(rng);
      } else {
        x = below[uniform_below(rng, below.size())];
      }
    }
    try {
      ks[r] = select_xmin(sample).ks_statistic;
    } catch (const InputError&) {
      ks[r] = 0.0;  // a single support point cannot be fitted
    }
  });
  return ks;
}

double p_value_from(std::span<const double> replicate_ks, double observed) {
  if (replicate_ks.empty()) return 0.0;
  auto hits = std::count_if(replicate_ks.begin(), replicate_ks.end(),
                            [observed](double ks) { return ks >= observed; });
  return static_cast<double>(hits) / static_cast<double>(replicate_ks.size());
}

double gof_pvalue(std::span<const std::uint64_t> data, const PowerLawFit& fit,
                  std::size_t replicates, std::uint64_t seed) {
  if (replicates < 100) throw InputError("goodness of fit needs at least 100 replicates");
  return p_value_from(bootstrap_ks(data, fit, replicates, seed), fit.ks_statistic);
}

PowerLawFit fit_power_law(std::span<const std::uint64_t> data, std::size_t replicates,
                          std::uint64_t seed) {
  std::vector<std::uint64_t> positive;
  for (auto x : data) {
    if (x > 0) positive.push_back(x);
  }
  XminSelection sel;
  try {
    sel = select_xmin(positive);
  } catch (const InputError& e) {
    throw DegenerateError(std::string("power-law fit: ") + e.what());
  }
  PowerLawFit fit{sel.alpha, sel.xmin, sel.ks_statistic, 0.0, sel.n_tail, replicates};
  if (replicates > 0) {
    fit.p_value = p_value_from(bootstrap_ks(positive, fit, replicates, seed), fit.ks_statistic);
  }
  return fit;
}

std::vector<DegreeDistributionRow> degree_distribution(std::span<const std::uint64_t> values) {
  std::vector<std::uint64_t> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<DegreeDistributionRow> rows;
  const double n = static_cast<double>(sorted.size());
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    rows.push_back({sorted[i], j - i, static_cast<double>(sorted.size() - i) / n});
    i = j;
  }
  return rows;
}

void write_degree_distribution_csv(std::span<const DegreeDistributionRow> rows, std::ostream& out) {
  out << "degree,count,ccdf\n";
  const auto old = out.precision(17);
  for (const auto& r : rows) out << r.degree << ',' << r.count << ',' << r.ccdf << '\n';
  out.precision(old);
}

}  // namespace depnet
