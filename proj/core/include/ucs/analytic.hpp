#pragma once

#include "ucs/graph.hpp"
#include "ucs/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>

/// Closed-form probabilities, expectations and bounds on maximal stable sets
/// of G ∈ B(m, n; p). Probability bounds are returned raw: a value above 1 is
/// legal (the bound is then vacuous) and flagged rather than clipped.
namespace ucs::analytic {

struct BoundValue {
  double raw = 0.0;

  bool saturated() const noexcept { return raw > 1.0; }
  double clamped() const noexcept { return raw < 0.0 ? 0.0 : (raw > 1.0 ? 1.0 : raw); }
};

// A real value with a flag for conventions applied at degenerate arguments.
struct FlaggedValue {
  double value = 0.0;
  bool degenerate = false;
};

/// Pr[X >= alpha] <= E[X] / alpha. Throws RangeError if alpha <= 0 or the
/// expectation is negative.
BoundValue markov_bound(double expectation, double alpha);

/// Pr[|X - E X| >= lam] <= var / lam^2.
BoundValue chebyshev_bound(double variance, double lam);

/// Tail bound exp(-2 lam^2 / (s rho^2)) for a sum of s independent [0, rho]
/// variables deviating by lam from its mean.
BoundValue hoeffding_bound(std::uint64_t s, double rho, double lam);

/// Probability that a fixed vertex set with ell vertices in L and r in R is a
/// maximal stable set: q^(ell r) (1 - q^r)^(m - ell) (1 - q^ell)^(n - r).
/// Switches to log space once a factor's log-magnitude exceeds 700.
double pr_maximal_stable(std::size_t m, std::size_t n, const EdgeProbability& prob,
                         std::size_t ell, std::size_t r);
/// Plain product of the three factors.
double pr_maximal_stable_direct(std::size_t m, std::size_t n, const EdgeProbability& prob,
                                std::size_t ell, std::size_t r);
/// Natural logarithm of the same quantity (-inf when it is 0).
double log_pr_maximal_stable(std::size_t m, std::size_t n, const EdgeProbability& prob,
                             std::size_t ell, std::size_t r);

/// E[stab(>= ell*; >= r*)] = sum_{l >= ell*} sum_{r >= r*} C(m,l) C(n,r) q^(l r),
/// the expected number of stable sets with at least ell* left and r* right
/// vertices. Exact binomials, compensated summation.
double expected_stab_at_least(std::size_t m, std::size_t n, const EdgeProbability& prob,
                              std::size_t ell_star, std::size_t r_star);
Rational expected_stab_at_least_exact(std::size_t m, std::size_t n, const Rational& q,
                                      std::size_t ell_star, std::size_t r_star);

/// 2^(m+1) (n q^ell*)^r*. Throws HypothesisError unless n q^ell* <= 1/2.
double genupper_bound(std::size_t m, std::size_t n, const EdgeProbability& prob,
                      std::size_t ell_star, std::size_t r_star);
Rational genupper_bound_exact(std::size_t m, std::size_t n, const Rational& q,
                              std::size_t ell_star, std::size_t r_star);

/// log_{1/q}(x).
double log_inv_q(double x, const EdgeProbability& prob);

/// floor/ceil that snap to the nearest integer when within 1e-9 (relative)
/// of it, so that log_2(8) is 3 and not 2.
long long floor_snapped(double x);
long long ceil_snapped(double x);

/// Parameters of (m, n, p) and the logarithmic quantities derived from them.
struct RegimeParams {
  std::uint64_t m = 0;
  std::uint64_t n = 0;
  EdgeProbability prob{0.5};
  double log_n = 0.0;  // log_{1/q}(n)
  double log_m = 0.0;  // log_{1/q}(m)
  long long a = 0;     // floor(log_{1/q} n)
  long long b = 0;     // floor(log_{1/q} m)
  // floor(log_{1/q}(floor(n / k))) with k = m^(log_{1/q} m); only when n >= k.
  std::optional<long long> a_prime;
  double log_k = 0.0;   // log_{1/q}(k)
  double lambda = 0.0;  // log_{1/q}(n) / m

  static RegimeParams make(std::uint64_t m, std::uint64_t n, const EdgeProbability& prob);
};

/// c = e^(-(2/q + 1)).
double small_mss_constant(const EdgeProbability& prob);

/// c C(m, a) b^(-b), the lower bound on the expected number of maximal stable
/// sets with exactly a left and b right vertices. Uses 0^0 = 1 (flagged) when
/// a or b is 0. Throws RangeError unless m >= log_{1/q} n and n >= log_{1/q} m.
FlaggedValue exp_small_mss_lower(const RegimeParams& params);

/// Exact E[number of maximal stable sets with |S∩L| = a, |S∩R| = b].
double expected_small_mss(std::size_t m, std::size_t n, const EdgeProbability& prob,
                          std::size_t a, std::size_t b);

struct PairCountSpec {
  std::size_t i = 0;  // |S ∩ T ∩ L|
  std::size_t j = 0;  // |S ∩ T ∩ R|
  std::size_t a = 0;  // |S ∩ L| = |T ∩ L|
  std::size_t b = 0;  // |S ∩ R| = |T ∩ R|
};

/// B_{i,j}: expected number of ordered pairs (S, T) of stable sets with the
/// overlap pattern of `spec`,
/// C(m,i) C(m-i,a-i) C(m-a,a-i) C(n,j) C(n-j,b-j) C(n-b,b-j) q^(2ab - ij).
double pair_expectation_B(const PairCountSpec& spec, std::size_t m, std::size_t n,
                          const EdgeProbability& prob);
/// B_{i,j} / E[S]^2 where S counts maximal stable sets with sides (a, b).
double pair_ratio(const PairCountSpec& spec, std::size_t m, std::size_t n,
                  const EdgeProbability& prob);

/// H(kappa) = kappa log2(1/kappa) + (1-kappa) log2(1/(1-kappa)); 0 at the
/// endpoints (flagged). Throws RangeError outside [0, 1].
FlaggedValue binary_entropy(double kappa);

/// 2^(H(k/m) m) / (m + 1), a lower bound on C(m, k). Requires 0 < k < m.
double binom_entropy_lower(std::size_t m, std::size_t k);

/// 2^(H(1-gamma) m), an upper bound on sum_{i >= ceil(gamma m)} C(m, i).
/// Requires 1/2 < gamma < 1.
double binom_tail_upper(std::size_t m, double gamma);
/// The exact tail sum_{i = ceil(gamma m)}^m C(m, i), with gamma read as its
/// shortest decimal.
Integer binom_tail_exact(std::size_t m, double gamma);

/// k! p^k q^(k^2 - k): probability that k fixed left and k fixed right
/// vertices span an induced perfect matching.
double induced_matching_prob(std::size_t k, const EdgeProbability& prob);

struct FixedConstants {
  long long r_star = 0;   // ceil(3 log_{1/q} 2) + 1
  long long c_right = 0;  // max{20, (ceil(3 log_{1/q} 2) + 2)^2}
  double small_mss_c = 0.0;
};

FixedConstants fixed_constants(const EdgeProbability& prob);

/// 1 - (1 - p^n)^m: probability that some left vertex is adjacent to all of R.
double dominating_vertex_prob(std::size_t m, std::size_t n, const EdgeProbability& prob);

// Thresholds appearing in the high-probability statements.

/// n^(r*).
double largeleft_threshold(std::uint64_t n, const EdgeProbability& prob);
/// log_q(1/4) = log_{1/q}(4).
double squpper_exponent(const EdgeProbability& prob);
/// 2 n^(log_q(1/4)).
double squpper_threshold(std::uint64_t n, const EdgeProbability& prob);
/// c C(m, a') b^(-b); requires a' to be defined.
double hoeffding_exp_threshold(const RegimeParams& params);
/// 2^((1 - phi) H(lambda) m); requires 0 < lambda < 1.
double asymptotic_lower_threshold(const RegimeParams& params, double phi);
/// min over kappa in [1/16, alpha] of (1 - phi) H(kappa) - 2 kappa.
double hugeright_gamma(double alpha, double phi);
/// H(1/2 - delta/2) - H(1/2 - delta), for 0 < delta < 1/2.
double gigantic_mu(double delta);
/// 1 - (1 - m! p^m q^(m^2 - m))^floor(n/m): lower bound on the probability
/// that some block of m right vertices is matched to L by an induced matching.
double saturation_lower(std::size_t m, std::uint64_t n, const EdgeProbability& prob);

}  // namespace ucs::analytic
