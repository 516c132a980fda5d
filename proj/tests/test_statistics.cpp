#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pautom/json_io.hpp"
#include "pautom/statistics.hpp"

using namespace pautom;

TEST_CASE("exact totals at levels 1..3") {
  const RankTotals t1 = totals_exact(1);
  CHECK(t1.element_count == 7);
  CHECK(t1.total_rank == 8);
  CHECK(t1.total_ultimate_rank == 6);  // ultimate ranks 2,2,1,1,0,0,0
  CHECK(t1.p == BigRational(3, 7));

  const RankTotals t2 = totals_exact(2);
  CHECK(t2.element_count == 127);
  CHECK(t2.total_rank == 256);
  CHECK(t2.total_ultimate_rank == 136);  // enumerated; within the 3*6*(1+7)=144 bound
  CHECK(t2.p == BigRational(34, 127));

  const RankTotals t3 = totals_exact(3);
  CHECK(t3.total_rank == 131072);  // 2^17
  CHECK(t3.total_ultimate_rank == 47232);

  CHECK_THROWS_AS(totals_exact(4), std::invalid_argument);
}

TEST_CASE("total rank closed form, recursion and the printed-form erratum") {
  CHECK(closed_form_total_rank(1) == 8);
  CHECK(closed_form_total_rank(2) == 256);
  CHECK(closed_form_total_rank(3) == 131072);
  for (int n = 1; n <= 12; ++n) {
    CHECK(closed_form_total_rank(n) == recursive_total_rank(n));
    CHECK(closed_form_total_rank(n) == pow2((1ULL << (n + 1)) + n - 2));
  }
  // The 2^(2^n+n-2) variant fails already at its base case.
  CHECK(printed_total_rank_form(1) == 2);
  CHECK(printed_total_rank_form(1) != closed_form_total_rank(1));
}

TEST_CASE("ultimate rank bound and p decay hold exactly at small levels") {
  const RankTotals t1 = totals_exact(1), t2 = totals_exact(2), t3 = totals_exact(3);
  CHECK(t2.total_ultimate_rank <= 3 * t1.total_ultimate_rank * (1 + t1.element_count));
  CHECK(t3.total_ultimate_rank <= 3 * t2.total_ultimate_rank * (1 + t2.element_count));
  CHECK(t2.p <= t1.p * BigRational(3, 4));
  CHECK(t3.p <= t2.p * BigRational(3, 4));
}

TEST_CASE("p_estimate is consistent with the exact values") {
  const Estimate e1 = p_estimate(1, 20000, 0);
  CHECK(std::abs(e1.mean - 3.0 / 7.0) <= 3.0 * e1.standard_error);
  const Estimate e2 = p_estimate(2, 20000, 0);
  CHECK(std::abs(e2.mean - 34.0 / 127.0) <= 3.0 * e2.standard_error);
  const Estimate e3 = p_estimate(3, 20000, 0);
  CHECK(std::abs(e3.mean - 5904.0 / 32767.0) <= 3.0 * e3.standard_error);
  // One-sided decay-chain bound from p_1 = 3/7.
  const Estimate e8 = p_estimate(8, 100000, 0, /*workers=*/4);
  CHECK(e8.mean <= std::pow(0.75, 7) * (3.0 / 7.0) + 3.0 * e8.standard_error);
}

TEST_CASE("p_estimate is worker independent") {
  const Estimate serial = p_estimate(5, 4000, 7, 1);
  const Estimate parallel = p_estimate(5, 4000, 7, 4);
  CHECK(serial.mean == parallel.mean);
  CHECK(serial.standard_error == parallel.standard_error);
}

TEST_CASE("convergence rows: determinism and the definitional identities") {
  ConvergenceConfig cfg;
  cfg.level_min = 2;
  cfg.level_max = 5;
  cfg.samples = 3000;
  cfg.seed = 42;
  const auto rows = convergence_experiment(cfg);
  REQUIRE(rows.size() == 4);
  cfg.workers = 4;
  const auto rows_mt = convergence_experiment(cfg);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].mean_norm_ult_rank == rows_mt[i].mean_norm_ult_rank);
    CHECK(rows[i].standard_error == rows_mt[i].standard_error);
    CHECK(rows[i].f_re_z2 == rows_mt[i].f_re_z2);
  }
  for (const auto& r : rows) {
    CHECK(r.mass_at_zero == 1.0 - r.mean_norm_ult_rank);
    CHECK(r.f_id == r.f_re_z);  // both reduce to the fixed-leaf count
    CHECK(r.f_id <= r.f_re_z2 + 1e-15);
    CHECK(r.bound == doctest::Approx(std::pow(0.75, r.level - 1) * 3.0 / 7.0));
    // The |z|^2 functional is the normalized ultimate rank, so the row mean
    // must equal the plain estimator under the same seed.
    const Estimate e = p_estimate(r.level, cfg.samples, cfg.seed);
    CHECK(r.mean_norm_ult_rank == e.mean);
  }
}

TEST_CASE("exhaustive convergence row at level 2 gives exact p_2") {
  ConvergenceConfig cfg;
  cfg.level_min = 2;
  cfg.level_max = 2;
  cfg.exhaustive = true;
  const auto rows = convergence_experiment(cfg);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].samples == 127);
  CHECK(rows[0].mean_norm_ult_rank == doctest::Approx(136.0 / 508.0).epsilon(1e-14));
  CHECK_THROWS_AS(
      [] {
        ConvergenceConfig c;
        c.level_min = 4;
        c.level_max = 4;
        c.exhaustive = true;
        return convergence_experiment(c);
      }(),
      std::invalid_argument);
}

TEST_CASE("CSV schema and stability") {
  ConvergenceConfig cfg;
  cfg.level_min = 1;
  cfg.level_max = 3;
  cfg.samples = 500;
  cfg.seed = 3;
  const auto rows = convergence_experiment(cfg);
  const std::string csv = convergence_csv(rows, cfg);
  CHECK(csv.find("n,samples,mean_norm_ult_rank,stderr,mass_at_zero,f_id,f_re_z,f_re_z2,bound\n") !=
        std::string::npos);
  CHECK(csv.find("# seed=3") != std::string::npos);
  CHECK(csv == convergence_csv(convergence_experiment(cfg), cfg));
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);  // comment + header + 3 rows
}

TEST_CASE("verification report") {
  const VerificationReport rep2 = verify_suite(2);
  CHECK(rep2.all_pass());
  bool saw_n2_count = false, saw_total_rank = false, saw_erratum = false, saw_oracle = false;
  for (const Claim& c : rep2.claims) {
    if (c.claim == "cardinality_vs_enumeration_n2") {
      saw_n2_count = true;
      CHECK(c.computed == "127");
    }
    if (c.claim == "total_rank_enumeration_vs_closed_form_n2") {
      saw_total_rank = true;
      CHECK(c.computed == "256");
    }
    if (c.claim == "erratum_printed_total_rank_exponent") {
      saw_erratum = true;
      CHECK(c.pass);
      CHECK(c.computed.find("2 ") == 0);
      CHECK(c.expected.find("8") == 0);
    }
    if (c.claim == "nonzero_eigenvalue_count_equals_ultimate_rank_n2") {
      saw_oracle = true;
      CHECK(c.computed == "127/127");
    }
  }
  CHECK(saw_n2_count);
  CHECK(saw_total_rank);
  CHECK(saw_erratum);
  CHECK(saw_oracle);

  const VerificationReport rep3 = verify_suite(3);
  CHECK(rep3.all_pass());
  bool saw_decay3 = false;
  for (const Claim& c : rep3.claims)
    if (c.claim == "p_decay_n3") {
      saw_decay3 = true;
      CHECK(c.computed == "5904/32767");
    }
  CHECK(saw_decay3);

  const auto j = report_to_json(rep2);
  CHECK(j["all_pass"].get<bool>());
  CHECK(j["claims"].size() == rep2.claims.size());

  CHECK_THROWS_AS(verify_suite(4), std::invalid_argument);
  CHECK_THROWS_AS(verify_suite(0), std::invalid_argument);
}

TEST_CASE("chi-square survival function against closed forms") {
  // df = 2: Q(x) = exp(-x/2); df = 4: Q(x) = exp(-x/2)(1 + x/2).
  for (double x : {0.5, 2.0, 5.0, 11.0, 30.0}) {
    CHECK(chi_square_survival(x, 2) == doctest::Approx(std::exp(-x / 2)).epsilon(1e-10));
    CHECK(chi_square_survival(x, 4) ==
          doctest::Approx(std::exp(-x / 2) * (1 + x / 2)).epsilon(1e-10));
  }
  CHECK(chi_square_survival(0.0, 6) == 1.0);
  // 0.999 quantile for df = 6 is 22.4577 (standard tables).
  CHECK(chi_square_survival(22.4577, 6) == doctest::Approx(0.001).epsilon(1e-3));
  CHECK(chi_square_statistic(std::vector<std::uint64_t>{5, 5}, std::vector<double>{5.0, 5.0}) ==
        0.0);
  CHECK_THROWS_AS(
      chi_square_statistic(std::vector<std::uint64_t>{1}, std::vector<double>{0.0}),
      std::invalid_argument);
}
