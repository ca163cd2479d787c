#include "oracles.hpp"
#include "ucs/analytic.hpp"
#include "ucs/error.hpp"
#include "ucs/mss.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

using namespace ucs;
using namespace ucs::analytic;

namespace {

const EdgeProbability kHalf(0.5);

void expect_rel(double actual, double expected, double tol) {
  EXPECT_LE(std::abs(actual - expected), tol * std::abs(expected)) << actual << " vs " << expected;
}

}  // namespace

TEST(Bounds, MarkovChebyshevHoeffding) {
  EXPECT_DOUBLE_EQ(markov_bound(2, 4).raw, 0.5);
  EXPECT_DOUBLE_EQ(markov_bound(0, 1).raw, 0.0);
  EXPECT_NEAR(markov_bound(4.566, 16).raw, 0.2854, 1e-4);
  EXPECT_THROW(markov_bound(1, 0), RangeError);
  EXPECT_THROW(markov_bound(-1, 1), RangeError);
  const auto big = markov_bound(3, 2);
  EXPECT_TRUE(big.saturated());
  EXPECT_DOUBLE_EQ(big.raw, 1.5);
  EXPECT_DOUBLE_EQ(big.clamped(), 1.0);

  EXPECT_DOUBLE_EQ(chebyshev_bound(1, 2).raw, 0.25);
  EXPECT_DOUBLE_EQ(chebyshev_bound(0, 7).raw, 0.0);
  EXPECT_NEAR(chebyshev_bound(9, 3 * 1.5).raw, 4.0 / 9.0, 1e-15);
  EXPECT_THROW(chebyshev_bound(1, 0), RangeError);

  EXPECT_NEAR(hoeffding_bound(1, 1, 0.1).raw, 0.98020, 1e-5);
  EXPECT_EQ(hoeffding_bound(1, 1, std::numeric_limits<double>::infinity()).raw, 0.0);
  EXPECT_NEAR(hoeffding_bound(4, 2, 2).raw, 0.60653, 1e-5);
  EXPECT_THROW(hoeffding_bound(1, 0, 1), RangeError);
  EXPECT_THROW(hoeffding_bound(0, 1, 1), RangeError);
}

TEST(PrMaximalStable, Examples) {
  EXPECT_DOUBLE_EQ(pr_maximal_stable(2, 2, kHalf, 1, 1), 0.125);
  for (double p : {0.2, 0.5, 0.8}) {
    const EdgeProbability prob(p);
    expect_rel(pr_maximal_stable(3, 4, prob, 3, 4), std::pow(1 - p, 12), 1e-14);
  }
  EXPECT_EQ(pr_maximal_stable(3, 3, kHalf, 1, 0), 0.0);
  EXPECT_DOUBLE_EQ(pr_maximal_stable(3, 3, kHalf, 3, 0), std::pow(1 - 0.125, 3));
  EXPECT_THROW(pr_maximal_stable(3, 3, kHalf, 4, 0), RangeError);
  EXPECT_THROW(pr_maximal_stable(3, 3, EdgeProbability(1.0), 1, 1), RangeError);
}

TEST(PrMaximalStable, MatchesWeightedEnumeration) {
  for (const auto& p : {Rational(1, 5), Rational(1, 2), Rational(4, 5)}) {
    const EdgeProbability prob(p.get_d());
    for (std::size_t m = 1; m <= 3; ++m) {
      for (std::size_t n = 1; n <= 4; ++n) {
        for (std::size_t ell = 0; ell <= m; ++ell) {
          for (std::size_t r = 0; r <= n; ++r) {
            const StableSet s{[&] { Bits b(m); for (std::size_t i = 0; i < ell; ++i) b.set(i); return b; }(),
                              [&] { Bits b(n); for (std::size_t i = 0; i < r; ++i) b.set(i); return b; }()};
            const Rational exact = oracle::expectation(m, n, p, [&](const BipartiteGraph& g) {
              return Rational(is_maximal_stable(g, s) ? 1 : 0);
            });
            EXPECT_NEAR(pr_maximal_stable(m, n, prob, ell, r), exact.get_d(), 1e-14)
                << m << " " << n << " " << ell << " " << r << " p=" << p;
          }
        }
      }
    }
  }
}

TEST(PrMaximalStable, LogSpaceAgreesWithDirect) {
  for (double p : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const EdgeProbability prob(p);
    for (std::size_t m = 1; m <= 30; m += 3) {
      for (std::size_t n = 1; n <= 30; n += 4) {
        for (std::size_t ell = 0; ell <= m; ++ell) {
          for (std::size_t r = 0; r <= n; ++r) {
            const double direct = pr_maximal_stable_direct(m, n, prob, ell, r);
            if (direct < 1e-290) continue;
            expect_rel(std::exp(log_pr_maximal_stable(m, n, prob, ell, r)), direct, 1e-12);
          }
        }
      }
    }
  }
}

TEST(PrMaximalStable, HugeArgumentsStayFinite) {
  const double v = pr_maximal_stable(4000, 4000, kHalf, 12, 12);
  EXPECT_TRUE(std::isfinite(v));
  EXPECT_GT(v, 0.0);
  EXPECT_EQ(pr_maximal_stable(4000, 4000, kHalf, 400, 400), 0.0);
  EXPECT_NEAR(log_pr_maximal_stable(4000, 4000, kHalf, 400, 400), -160000 * std::log(2.0), 1.0);
}

TEST(PrMaximalStable, SumsToExpectedTotal) {
  for (const auto& p : {Rational(1, 2), Rational(3, 10)}) {
    const EdgeProbability prob(p.get_d());
    const std::size_t m = 3, n = 3;
    double closed = 0;
    for (std::size_t l = 0; l <= m; ++l)
      for (std::size_t r = 0; r <= n; ++r)
        closed += binomial(m, l).get_d() * binomial(n, r).get_d() * pr_maximal_stable(m, n, prob, l, r);
    const Rational exact = oracle::expectation(m, n, p, [](const BipartiteGraph& g) {
      return Rational(mss_stats(g).total);
    });
    EXPECT_NEAR(closed, exact.get_d(), 1e-12);
  }
  // Monte Carlo at 6 x 6.
  const std::size_t m = 6, n = 6;
  double closed = 0;
  for (std::size_t l = 0; l <= m; ++l)
    for (std::size_t r = 0; r <= n; ++r)
      closed += binomial(m, l).get_d() * binomial(n, r).get_d() * pr_maximal_stable(m, n, kHalf, l, r);
  const int trials = 20000;
  double sum = 0, sq = 0;
  for (int t = 0; t < trials; ++t) {
    const double x = mss_stats(sample_bipartite(m, n, kHalf, Seed{77, static_cast<std::uint64_t>(t)})).total.get_d();
    sum += x;
    sq += x * x;
  }
  const double mean = sum / trials;
  const double sd = std::sqrt((sq - trials * mean * mean) / (trials - 1));
  EXPECT_NEAR(mean, closed, 4 * sd / std::sqrt(trials));
}

TEST(StabExpectation, SpotValuesAndOracle) {
  EXPECT_EQ(expected_stab_at_least_exact(4, 2, Rational(1, 2), 2, 1), Rational(1169, 256));
  EXPECT_DOUBLE_EQ(expected_stab_at_least(4, 2, kHalf, 2, 1), 4.56640625);
  EXPECT_DOUBLE_EQ(expected_stab_at_least(3, 2, kHalf, 3, 2), std::pow(0.5, 6));
  EXPECT_THROW(expected_stab_at_least(3, 2, kHalf, 4, 0), RangeError);

  for (const auto& p : {Rational(1, 5), Rational(1, 2), Rational(4, 5)}) {
    const Rational q = 1 - p;
    for (std::size_t m = 1; m <= 3; ++m) {
      for (std::size_t n = 1; n <= 4; ++n) {
        for (std::size_t ell = 0; ell <= m; ++ell) {
          for (std::size_t r = 0; r <= n; ++r) {
            const Rational exact = oracle::expectation(m, n, p, [&](const BipartiteGraph& g) {
              return Rational(oracle::stab_at_least(g, ell, r));
            });
            EXPECT_EQ(expected_stab_at_least_exact(m, n, q, ell, r), exact);
            EXPECT_NEAR(expected_stab_at_least(m, n, EdgeProbability(p.get_d()), ell, r), exact.get_d(),
                        1e-12 * exact.get_d());
          }
        }
      }
    }
  }
}

TEST(GenUpper, Examples) {
  EXPECT_DOUBLE_EQ(genupper_bound(4, 2, kHalf, 2, 1), 16.0);
  EXPECT_EQ(genupper_bound_exact(4, 2, Rational(1, 2), 2, 1), Rational(16));
  EXPECT_DOUBLE_EQ(genupper_bound(10, 2, kHalf, 2, 1), 1024.0);
  EXPECT_THROW(genupper_bound(4, 3, kHalf, 1, 1), HypothesisError);
  EXPECT_THROW(genupper_bound_exact(4, 3, Rational(1, 2), 1, 1), HypothesisError);
}

TEST(GenUpper, DominatesOnSmallGrid) {
  for (const auto& p : {Rational(1, 5), Rational(1, 2), Rational(4, 5)}) {
    const Rational q = 1 - p;
    for (std::size_t m = 1; m <= 12; ++m) {
      for (std::size_t n = 1; n <= 12; ++n) {
        for (std::size_t ell = 0; ell <= m; ++ell) {
          if (Rational(static_cast<unsigned long>(n)) * oracle::rational_pow(q, static_cast<unsigned>(ell)) >
              Rational(1, 2))
            continue;
          for (std::size_t r = 0; r <= n; ++r) {
            EXPECT_LE(expected_stab_at_least_exact(m, n, q, ell, r), genupper_bound_exact(m, n, q, ell, r));
          }
        }
      }
    }
  }
}

TEST(Snapping, LogsOfPowers) {
  EXPECT_EQ(floor_snapped(log_inv_q(8, kHalf)), 3);
  EXPECT_EQ(ceil_snapped(log_inv_q(8, kHalf)), 3);
  EXPECT_EQ(floor_snapped(log_inv_q(1000, EdgeProbability(0.9))), 3);
  EXPECT_EQ(floor_snapped(2.5), 2);
  EXPECT_EQ(ceil_snapped(2.5), 3);
}

TEST(RegimeParams, DerivedQuantities) {
  const auto rp = RegimeParams::make(20, std::uint64_t{1} << 40, kHalf);
  EXPECT_EQ(rp.a, 40);
  EXPECT_EQ(rp.b, 4);
  EXPECT_NEAR(rp.log_k, std::pow(std::log2(20.0), 2), 1e-9);
  ASSERT_TRUE(rp.a_prime);
  EXPECT_EQ(*rp.a_prime, 21);
  EXPECT_DOUBLE_EQ(rp.lambda, 2.0);
  EXPECT_FALSE(RegimeParams::make(16, 64, kHalf).a_prime);
  EXPECT_THROW(RegimeParams::make(0, 3, kHalf), ZeroSideError);
}

TEST(SmallMss, LowerBound) {
  EXPECT_DOUBLE_EQ(small_mss_constant(kHalf), std::exp(-5.0));
  const auto v = exp_small_mss_lower(RegimeParams::make(64, 64, kHalf));
  EXPECT_FALSE(v.degenerate);
  expect_rel(v.value, std::exp(-5.0) * 74974368.0 / 46656.0, 1e-12);
  EXPECT_NEAR(v.value, 10.83, 0.01);
  const auto d = exp_small_mss_lower(RegimeParams::make(1, 1, kHalf));
  EXPECT_TRUE(d.degenerate);
  EXPECT_DOUBLE_EQ(d.value, std::exp(-5.0));
  EXPECT_THROW(exp_small_mss_lower(RegimeParams::make(2, 1024, kHalf)), RangeError);
}

TEST(SmallMss, ExpectedCountMatchesOracle) {
  const Rational p(1, 2);
  for (std::size_t a = 0; a <= 3; ++a) {
    for (std::size_t b = 0; b <= 3; ++b) {
      const Rational exact = oracle::expectation(3, 3, p, [&](const BipartiteGraph& g) {
        Integer c = 0;
        for (const auto& s : enumerate_mss(g)) c += s.left.count() == a && s.right.count() == b;
        return Rational(c);
      });
      EXPECT_NEAR(expected_small_mss(3, 3, kHalf, a, b), exact.get_d(), 1e-13);
    }
  }
}

TEST(PairExpectation, ClosedFormAndOracle) {
  expect_rel(pair_expectation_B({0, 0, 2, 2}, 6, 6, kHalf), 8100.0 / 256.0, 1e-15);
  expect_rel(pair_expectation_B({2, 1, 2, 1}, 5, 4, kHalf), 10.0 * 4.0 * std::pow(0.5, 2), 1e-15);
  EXPECT_THROW(pair_expectation_B({3, 0, 2, 2}, 6, 6, kHalf), RangeError);

  for (const auto& p : {Rational(1, 2), Rational(1, 4)}) {
    const EdgeProbability prob(p.get_d());
    for (std::size_t a = 1; a <= 2; ++a) {
      for (std::size_t b = 1; b <= 2; ++b) {
        for (std::size_t i = 0; i <= a; ++i) {
          for (std::size_t j = 0; j <= b; ++j) {
            const Rational exact = oracle::expectation(3, 3, p, [&](const BipartiteGraph& g) {
              return Rational(oracle::stable_pairs(g, i, j, a, b));
            });
            EXPECT_NEAR(pair_expectation_B({i, j, a, b}, 3, 3, prob), exact.get_d(), 1e-12)
                << i << j << a << b;
          }
        }
      }
    }
  }
}

TEST(PairExpectation, MonteCarloAtFiveByFive) {
  const std::size_t a = 2, b = 2;
  const int trials = 20000;
  for (std::size_t i : {0u, 1u}) {
    for (std::size_t j : {0u, 1u}) {
      double sum = 0, sq = 0;
      for (int t = 0; t < trials; ++t) {
        const auto g = sample_bipartite(5, 5, kHalf, Seed{99, static_cast<std::uint64_t>(t)});
        const double x = oracle::stable_pairs(g, i, j, a, b).get_d();
        sum += x;
        sq += x * x;
      }
      const double mean = sum / trials;
      const double sd = std::sqrt((sq - trials * mean * mean) / (trials - 1));
      EXPECT_NEAR(mean, pair_expectation_B({i, j, a, b}, 5, 5, kHalf), 4 * sd / std::sqrt(trials));
    }
  }
}

TEST(Entropy, Properties) {
  EXPECT_NEAR(binary_entropy(0.5).value, 1.0, 1e-15);
  EXPECT_NEAR(binary_entropy(0.25).value, 0.811278, 1e-6);
  EXPECT_TRUE(binary_entropy(0.0).degenerate);
  EXPECT_EQ(binary_entropy(1.0).value, 0.0);
  EXPECT_THROW(binary_entropy(-0.01), RangeError);
  EXPECT_THROW(binary_entropy(1.01), RangeError);
  double prev = 0;
  for (int i = 1; i < 1000; ++i) {
    const double k = i / 2000.0;
    const double h = binary_entropy(k).value;
    EXPECT_NEAR(h, binary_entropy(1 - k).value, 1e-14);
    EXPECT_GT(h, prev);
    EXPECT_LT(h, 1.0);
    prev = h;
  }
}

TEST(Entropy, BinomialBounds) {
  expect_rel(binom_entropy_lower(10, 5), 1024.0 / 11.0, 1e-14);
  expect_rel(binom_entropy_lower(4, 2), 3.2, 1e-14);
  EXPECT_THROW(binom_entropy_lower(4, 4), RangeError);
  EXPECT_NEAR(binom_tail_upper(10, 0.7), std::exp2(10 * (0.3 * std::log2(1 / 0.3) + 0.7 * std::log2(1 / 0.7))), 1e-9);
  EXPECT_NEAR(binom_tail_upper(10, 0.7), 449.73, 0.01);
  EXPECT_EQ(binom_tail_exact(10, 0.7), Integer(176));
  EXPECT_EQ(binom_tail_exact(10, 0.99), Integer(1));
  EXPECT_GE(binom_tail_upper(10, 0.99), 1.0);
  EXPECT_THROW(binom_tail_upper(10, 0.5), RangeError);
}

TEST(InducedMatchingProb, Values) {
  EXPECT_DOUBLE_EQ(induced_matching_prob(1, EdgeProbability(0.3)), 0.3);
  EXPECT_DOUBLE_EQ(induced_matching_prob(2, kHalf), 0.125);
  EXPECT_DOUBLE_EQ(induced_matching_prob(3, kHalf), 0.01171875);
  EXPECT_THROW(induced_matching_prob(0, kHalf), RangeError);
  const Rational exact = oracle::expectation(2, 2, Rational(1, 3), [](const BipartiteGraph& g) {
    const bool perm = (g.has_edge(0, 0) && g.has_edge(1, 1) && !g.has_edge(0, 1) && !g.has_edge(1, 0)) ||
                      (g.has_edge(0, 1) && g.has_edge(1, 0) && !g.has_edge(0, 0) && !g.has_edge(1, 1));
    return Rational(perm ? 1 : 0);
  });
  EXPECT_NEAR(induced_matching_prob(2, EdgeProbability(1.0 / 3.0)), exact.get_d(), 1e-15);
}

TEST(Constants, FixedConstants) {
  const auto half = fixed_constants(kHalf);
  EXPECT_EQ(half.r_star, 4);
  EXPECT_EQ(half.c_right, 25);
  EXPECT_DOUBLE_EQ(half.small_mss_c, std::exp(-5.0));
  const auto nine = fixed_constants(EdgeProbability(0.9));
  EXPECT_EQ(nine.r_star, 2);
  EXPECT_EQ(nine.c_right, 20);
  for (int i = 1; i < 100; ++i) EXPECT_GE(fixed_constants(EdgeProbability(i / 100.0)).c_right, 20);
  EXPECT_THROW(fixed_constants(EdgeProbability(0.0)), RangeError);
}

TEST(Constants, DominatingVertex) {
  EXPECT_NEAR(dominating_vertex_prob(10, 2, kHalf), 1 - std::pow(0.75, 10), 1e-15);
  EXPECT_NEAR(dominating_vertex_prob(1, 1, EdgeProbability(0.37)), 0.37, 1e-15);
  EXPECT_NEAR(dominating_vertex_prob(6, 2, kHalf), 0.8220, 1e-4);
  const Rational exact = oracle::expectation(3, 2, Rational(1, 5), [](const BipartiteGraph& g) {
    for (std::size_t u = 0; u < g.m(); ++u)
      if (g.row(u).all()) return Rational(1);
    return Rational(0);
  });
  EXPECT_NEAR(dominating_vertex_prob(3, 2, EdgeProbability(0.2)), exact.get_d(), 1e-15);
}

TEST(Thresholds, Values) {
  EXPECT_DOUBLE_EQ(largeleft_threshold(10, kHalf), 1e4);
  EXPECT_NEAR(squpper_exponent(kHalf), 2.0, 1e-15);
  EXPECT_NEAR(squpper_threshold(10, kHalf), 200.0, 1e-10);
  const double mu = gigantic_mu(0.1);
  EXPECT_NEAR(mu, binary_entropy(0.45).value - binary_entropy(0.4).value, 1e-15);
  EXPECT_GT(mu, 0.0);
  EXPECT_THROW(gigantic_mu(0.5), RangeError);

  double grid_min = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 10000; ++i) {
    const double k = 1.0 / 16 + (0.45 - 1.0 / 16) * i / 10000.0;
    grid_min = std::min(grid_min, 0.5 * binary_entropy(k).value - 2 * k);
  }
  EXPECT_NEAR(hugeright_gamma(0.45, 0.5), grid_min, 1e-12);

  const auto rp = RegimeParams::make(20, std::uint64_t{1} << 40, kHalf);
  EXPECT_THROW(asymptotic_lower_threshold(rp, 0.5), RangeError);
  const auto mid = RegimeParams::make(16, 64, kHalf);
  EXPECT_NEAR(asymptotic_lower_threshold(mid, 0.5), std::exp2(0.5 * binary_entropy(6.0 / 16).value * 16), 1e-9);
  EXPECT_THROW(hoeffding_exp_threshold(mid), RangeError);
  const auto deep = RegimeParams::make(16, std::uint64_t{1} << 30, kHalf);
  ASSERT_TRUE(deep.a_prime);
  EXPECT_EQ(*deep.a_prime, 14);
  expect_rel(hoeffding_exp_threshold(deep), std::exp(-5.0) * 120.0 / 256.0, 1e-12);

  const double p1 = 6.0 / 512.0;
  expect_rel(saturation_lower(3, 4096, kHalf), 1 - std::pow(1 - p1, 1365), 1e-12);
  EXPECT_THROW(saturation_lower(5, 4, kHalf), RangeError);
}
