#include "pautom/statistics.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "pautom/parallel.hpp"
#include "pautom/spectral.hpp"
#include "pautom/tree_action.hpp"

namespace pautom {

namespace {

struct SampleCounters {
  std::uint32_t ultimate_rank = 0;
  std::uint32_t fixed_leaves = 0;        // leaves on 1-cycles
  std::uint32_t leaves_on_short = 0;     // leaves on cycles of length 1 or 2
};

SampleCounters count_sample(const WreathElement& x) {
  const CycleDecomposition c = cycle_decomposition(x);
  SampleCounters out;
  for (std::uint64_t len : c.cycle_lengths) {
    out.ultimate_rank += static_cast<std::uint32_t>(len);
    if (len == 1) ++out.fixed_leaves;
    if (len <= 2) out.leaves_on_short += static_cast<std::uint32_t>(len);
  }
  return out;
}

double mean_from_sum(std::uint64_t sum, std::uint64_t samples, int level) {
  return static_cast<double>(sum) /
         (static_cast<double>(samples) * static_cast<double>(1ULL << level));
}

double stderr_from_sums(std::uint64_t sum, std::uint64_t sum_sq, std::uint64_t samples,
                        int level) {
  if (samples < 2) return 0.0;
  const double dim = static_cast<double>(1ULL << level);
  const double s = static_cast<double>(samples);
  const double mean = static_cast<double>(sum) / (s * dim);
  const double mean_sq = static_cast<double>(sum_sq) / (s * dim * dim);
  double var = (mean_sq - mean * mean) * s / (s - 1.0);
  if (var < 0.0) var = 0.0;
  return std::sqrt(var / s);
}

}  // namespace

BigCount closed_form_total_rank(int level) {
  if (level < 1) throw std::invalid_argument("closed_form_total_rank: level must be >= 1");
  return pow2(level - 1) * (1 + count_closed_form(level));
}

BigCount recursive_total_rank(int level) {
  if (level < 1) throw std::invalid_argument("recursive_total_rank: level must be >= 1");
  BigCount r = 8;
  for (int k = 2; k <= level; ++k) r = 4 * r * (1 + count_closed_form(k - 1));
  return r;
}

BigCount printed_total_rank_form(int level) {
  if (level < 1) throw std::invalid_argument("printed_total_rank_form: level must be >= 1");
  return pow2((1ULL << level) + level - 2);
}

RankTotals totals_exact(int level) {
  if (level < 1) throw std::invalid_argument("totals_exact: level must be >= 1");
  if (level > kExhaustiveTotalsCap)
    throw std::invalid_argument("totals_exact: level " + std::to_string(level) +
                                " exceeds the exhaustive cap " +
                                std::to_string(kExhaustiveTotalsCap) +
                                "; use p_estimate instead");
  std::uint64_t rank_sum = 0;
  std::uint64_t ultimate_sum = 0;
  ElementStream stream(level);
  while (auto x = stream.next()) {
    rank_sum += rank_leaf(*x);
    ultimate_sum += ultimate_rank(*x);
  }
  RankTotals t;
  t.level = level;
  t.element_count = count_elements(level);
  t.total_rank = static_cast<unsigned long>(rank_sum);
  t.total_ultimate_rank = static_cast<unsigned long>(ultimate_sum);
  t.p = BigRational(t.total_ultimate_rank, pow2(level) * t.element_count);
  t.p.canonicalize();
  return t;
}

Estimate p_estimate(int level, std::uint64_t samples, std::uint64_t seed, int workers,
                    SampleMode mode) {
  if (samples < 1) throw std::invalid_argument("p_estimate: need at least one sample");
  const UniformSampler sampler(level, mode);
  std::vector<std::uint32_t> rks(samples);
  parallel_for(samples, workers, [&](std::uint64_t i) {
    rks[i] = static_cast<std::uint32_t>(
        ultimate_rank(sampler.sample_indexed(seed, i, static_cast<std::uint64_t>(level))));
  });
  std::uint64_t sum = 0, sum_sq = 0;
  for (std::uint32_t rk : rks) {
    sum += rk;
    sum_sq += static_cast<std::uint64_t>(rk) * rk;
  }
  Estimate e;
  e.samples = samples;
  e.mean = mean_from_sum(sum, samples, level);
  e.standard_error = stderr_from_sums(sum, sum_sq, samples, level);
  return e;
}

std::vector<ConvergenceRow> convergence_experiment(const ConvergenceConfig& cfg) {
  if (cfg.level_min < 1 || cfg.level_max < cfg.level_min)
    throw std::invalid_argument("convergence_experiment: bad level range");
  if (cfg.exhaustive && cfg.level_max > kExhaustiveTotalsCap)
    throw std::invalid_argument("convergence_experiment: exhaustive mode capped at level " +
                                std::to_string(kExhaustiveTotalsCap));
  std::vector<ConvergenceRow> rows;
  for (int n = cfg.level_min; n <= cfg.level_max; ++n) {
    std::uint64_t samples = 0;
    std::uint64_t sum_rk = 0, sum_rk_sq = 0, sum_fix = 0, sum_short = 0;
    if (cfg.exhaustive) {
      ElementStream stream(n);
      while (auto x = stream.next()) {
        const SampleCounters c = count_sample(*x);
        ++samples;
        sum_rk += c.ultimate_rank;
        sum_rk_sq += static_cast<std::uint64_t>(c.ultimate_rank) * c.ultimate_rank;
        sum_fix += c.fixed_leaves;
        sum_short += c.leaves_on_short;
      }
    } else {
      samples = cfg.samples;
      const UniformSampler sampler(n, cfg.mode);
      std::vector<SampleCounters> per_sample(samples);
      parallel_for(samples, cfg.workers, [&](std::uint64_t i) {
        per_sample[i] =
            count_sample(sampler.sample_indexed(cfg.seed, i, static_cast<std::uint64_t>(n)));
      });
      for (const SampleCounters& c : per_sample) {
        sum_rk += c.ultimate_rank;
        sum_rk_sq += static_cast<std::uint64_t>(c.ultimate_rank) * c.ultimate_rank;
        sum_fix += c.fixed_leaves;
        sum_short += c.leaves_on_short;
      }
    }
    ConvergenceRow row;
    row.level = n;
    row.samples = samples;
    row.mean_norm_ult_rank = mean_from_sum(sum_rk, samples, n);
    row.standard_error = stderr_from_sums(sum_rk, sum_rk_sq, samples, n);
    row.mass_at_zero = 1.0 - row.mean_norm_ult_rank;
    row.f_id = mean_from_sum(sum_fix, samples, n);
    row.f_re_z = row.f_id;
    row.f_re_z2 = mean_from_sum(sum_short, samples, n);
    row.bound = std::pow(0.75, n - 1) * (3.0 / 7.0);
    rows.push_back(row);
  }
  return rows;
}

namespace {

std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

std::string convergence_csv(const std::vector<ConvergenceRow>& rows,
                            const ConvergenceConfig& cfg) {
  std::string out = "# seed=" + std::to_string(cfg.seed) +
                    " samples=" + std::to_string(cfg.samples) +
                    " mode=" + (cfg.exhaustive ? std::string("exhaustive")
                                : cfg.mode == SampleMode::Exact ? std::string("exact")
                                                                : std::string("approx")) +
                    "\n";
  out += "n,samples,mean_norm_ult_rank,stderr,mass_at_zero,f_id,f_re_z,f_re_z2,bound\n";
  for (const ConvergenceRow& r : rows) {
    out += std::to_string(r.level) + "," + std::to_string(r.samples) + "," +
           fmt12(r.mean_norm_ult_rank) + "," + fmt12(r.standard_error) + "," +
           fmt12(r.mass_at_zero) + "," + fmt12(r.f_id) + "," + fmt12(r.f_re_z) + "," +
           fmt12(r.f_re_z2) + "," + fmt12(r.bound) + "\n";
  }
  return out;
}

bool VerificationReport::all_pass() const {
  for (const Claim& c : claims)
    if (!c.pass) return false;
  return true;
}

VerificationReport verify_suite(int level_cap) {
  if (level_cap < 1 || level_cap > kExhaustiveTotalsCap)
    throw std::invalid_argument("verify_suite: level cap must be in [1, " +
                                std::to_string(kExhaustiveTotalsCap) + "]");
  VerificationReport rep;
  rep.level_cap = level_cap;

  std::vector<RankTotals> totals;
  for (int n = 1; n <= level_cap; ++n) totals.push_back(totals_exact(n));

  for (int n = 1; n <= level_cap; ++n) {
    const BigCount closed = count_closed_form(n);
    rep.claims.push_back({"cardinality_closed_form_vs_recursion_n" + std::to_string(n),
                          closed.get_str(), count_recursive(n).get_str(),
                          closed == count_recursive(n), ""});
    rep.claims.push_back({"cardinality_vs_enumeration_n" + std::to_string(n),
                          closed.get_str(), totals[n - 1].element_count.get_str(),
                          closed == totals[n - 1].element_count, ""});
    const BigCount tr_closed = closed_form_total_rank(n);
    rep.claims.push_back({"total_rank_enumeration_vs_closed_form_n" + std::to_string(n),
                          tr_closed.get_str(), totals[n - 1].total_rank.get_str(),
                          tr_closed == totals[n - 1].total_rank, ""});
    rep.claims.push_back({"total_rank_recursion_vs_closed_form_n" + std::to_string(n),
                          tr_closed.get_str(), recursive_total_rank(n).get_str(),
                          tr_closed == recursive_total_rank(n), ""});
  }

  rep.claims.push_back({"total_ultimate_rank_n1", "6",
                        totals[0].total_ultimate_rank.get_str(),
                        totals[0].total_ultimate_rank == 6, ""});
  rep.claims.push_back({"p_n1", "3/7", totals[0].p.get_str(),
                        totals[0].p == BigRational(3, 7), ""});

  for (int n = 2; n <= level_cap; ++n) {
    const BigCount bound =
        3 * totals[n - 2].total_ultimate_rank * (1 + totals[n - 2].element_count);
    rep.claims.push_back({"ultimate_rank_bound_n" + std::to_string(n),
                          "<= " + bound.get_str(),
                          totals[n - 1].total_ultimate_rank.get_str(),
                          totals[n - 1].total_ultimate_rank <= bound, ""});
    BigRational decayed = totals[n - 2].p * BigRational(3, 4);
    decayed.canonicalize();
    rep.claims.push_back({"p_decay_n" + std::to_string(n), "<= " + decayed.get_str(),
                          totals[n - 1].p.get_str(), totals[n - 1].p <= decayed, ""});
  }

  {
    const BigCount printed = printed_total_rank_form(1);
    rep.claims.push_back(
        {"erratum_printed_total_rank_exponent", "8 (total rank at n=1)",
         printed.get_str() + " (printed form 2^(2^n+n-2) at n=1)", printed != 8,
         "the printed closed form fails its base case; 2^(n-1)(1+N_n) = "
         "2^(2^(n+1)+n-2) matches enumeration and the recursion"});
  }

  if (level_cap >= 2) {
    std::uint64_t matches = 0, total = 0;
    ElementStream stream(2);
    while (auto x = stream.next()) {
      ++total;
      const auto eigs = eigenvalues_dense_oracle(*x);
      std::uint64_t nonzero = 0;
      for (const auto& l : eigs) nonzero += std::abs(l) > 0.5;
      matches += nonzero == ultimate_rank(*x);
    }
    rep.claims.push_back({"nonzero_eigenvalue_count_equals_ultimate_rank_n2",
                          std::to_string(total) + "/" + std::to_string(total),
                          std::to_string(matches) + "/" + std::to_string(total),
                          matches == total, "dense eigensolver vs cycle structure"});
  }

  return rep;
}

double chi_square_statistic(std::span<const std::uint64_t> observed,
                            std::span<const double> expected) {
  if (observed.size() != expected.size())
    throw std::invalid_argument("chi_square_statistic: size mismatch");
  double stat = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (expected[i] <= 0.0)
      throw std::invalid_argument("chi_square_statistic: expected counts must be positive");
    const double d = static_cast<double>(observed[i]) - expected[i];
    stat += d * d / expected[i];
  }
  return stat;
}

double regularized_gamma_q(double a, double x) {
  if (a <= 0.0 || x < 0.0) throw std::invalid_argument("regularized_gamma_q: bad arguments");
  if (x == 0.0) return 1.0;
  constexpr int kMaxIter = 2000;
  constexpr double kEps = 1e-15;
  if (x < a + 1.0) {
    // Series for P(a,x); Q = 1 - P.
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < kMaxIter; ++i) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::fabs(del) < std::fabs(sum) * kEps) break;
    }
    return 1.0 - sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
  }
  // Continued fraction for Q(a,x), modified Lentz.
  constexpr double kTiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kMaxIter; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

double chi_square_survival(double x, double df) {
  return regularized_gamma_q(df / 2.0, x / 2.0);
}

}  // namespace pautom
