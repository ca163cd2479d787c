#include "ucs/analytic.hpp"

#include "ucs/error.hpp"
#include "numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace ucs::analytic {

namespace {

constexpr double kLogMagnitudeLimit = 700.0;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

using detail::CompensatedSum;

// count * log(base), with 0 * log(0) read as log(0^0) = 0.
double scaled_log(double count, double log_base) { return count == 0.0 ? 0.0 : count * log_base; }

double log_binomial(std::uint64_t n, std::uint64_t k) { return log_of(binomial(n, k)); }

// log(1 - q^k) for q = 1 - p, accurate when q^k is tiny or close to 1.
double log_one_minus_q_pow(const EdgeProbability& prob, std::size_t k) {
  if (k == 0) return kNegInf;
  return std::log(-std::expm1(static_cast<double>(k) * std::log1p(-prob.p())));
}

Rational pow_exact(const Rational& base, unsigned long e) {
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e);
  Rational r(num, den);
  r.canonicalize();
  return r;
}

void check_sizes(std::size_t m, std::size_t n, std::size_t ell, std::size_t r) {
  if (ell > m || r > n) throw RangeError("side sizes out of range: need ell <= m and r <= n");
}

double entropy(double kappa) { return binary_entropy(kappa).value; }

}  // namespace

BoundValue markov_bound(double expectation, double alpha) {
  if (!(alpha > 0.0)) throw RangeError("Markov bound needs alpha > 0");
  if (expectation < 0.0) throw RangeError("Markov bound needs a nonnegative expectation");
  return {expectation / alpha};
}

BoundValue chebyshev_bound(double variance, double lam) {
  if (!(lam > 0.0)) throw RangeError("Chebyshev bound needs lambda > 0");
  if (variance < 0.0) throw RangeError("variance must be nonnegative");
  return {variance / (lam * lam)};
}

BoundValue hoeffding_bound(std::uint64_t s, double rho, double lam) {
  if (s == 0) throw RangeError("Hoeffding bound needs at least one variable");
  if (!(rho > 0.0) || !(lam > 0.0)) throw RangeError("Hoeffding bound needs rho > 0 and lambda > 0");
  return {std::exp(-2.0 * lam * lam / (static_cast<double>(s) * rho * rho))};
}

double pr_maximal_stable_direct(std::size_t m, std::size_t n, const EdgeProbability& prob,
                                std::size_t ell, std::size_t r) {
  prob.require_proper();
  check_sizes(m, n, ell, r);
  const double q = prob.q();
  return std::pow(q, static_cast<double>(ell * r)) *
         std::pow(1.0 - std::pow(q, static_cast<double>(r)), static_cast<double>(m - ell)) *
         std::pow(1.0 - std::pow(q, static_cast<double>(ell)), static_cast<double>(n - r));
}

double log_pr_maximal_stable(std::size_t m, std::size_t n, const EdgeProbability& prob,
                             std::size_t ell, std::size_t r) {
  prob.require_proper();
  check_sizes(m, n, ell, r);
  const double log_q = std::log1p(-prob.p());
  return static_cast<double>(ell) * static_cast<double>(r) * log_q +
         scaled_log(static_cast<double>(m - ell), log_one_minus_q_pow(prob, r)) +
         scaled_log(static_cast<double>(n - r), log_one_minus_q_pow(prob, ell));
}

double pr_maximal_stable(std::size_t m, std::size_t n, const EdgeProbability& prob,
                         std::size_t ell, std::size_t r) {
  prob.require_proper();
  check_sizes(m, n, ell, r);
  const double log_q = std::log1p(-prob.p());
  const double magnitudes[] = {
      std::abs(static_cast<double>(ell) * static_cast<double>(r) * log_q),
      std::abs(scaled_log(static_cast<double>(m - ell), log_one_minus_q_pow(prob, r))),
      std::abs(scaled_log(static_cast<double>(n - r), log_one_minus_q_pow(prob, ell))),
  };
  for (double mag : magnitudes) {
    if (mag > kLogMagnitudeLimit) return std::exp(log_pr_maximal_stable(m, n, prob, ell, r));
  }
  return pr_maximal_stable_direct(m, n, prob, ell, r);
}

double expected_stab_at_least(std::size_t m, std::size_t n, const EdgeProbability& prob,
                              std::size_t ell_star, std::size_t r_star) {
  prob.require_proper();
  check_sizes(m, n, ell_star, r_star);
  const double log_q = std::log1p(-prob.p());
  CompensatedSum sum;
  for (std::size_t l = ell_star; l <= m; ++l) {
    const Integer cl = binomial(m, l);
    for (std::size_t r = r_star; r <= n; ++r) {
      const Integer cr = binomial(n, r);
      const double weight = static_cast<double>(l) * static_cast<double>(r) * log_q;
      const double factor = std::pow(prob.q(), static_cast<double>(l) * static_cast<double>(r));
      double term = cl.get_d() * cr.get_d() * factor;
      if (!std::isfinite(term) || factor == 0.0) {
        term = std::exp(log_of(cl) + log_of(cr) + weight);
      }
      sum.add(term);
    }
  }
  return sum.value();
}

Rational expected_stab_at_least_exact(std::size_t m, std::size_t n, const Rational& q,
                                      std::size_t ell_star, std::size_t r_star) {
  check_sizes(m, n, ell_star, r_star);
  if (q <= 0 || q >= 1) throw RangeError("closed forms require 0 < q < 1");
  Rational sum = 0;
  for (std::size_t l = ell_star; l <= m; ++l) {
    const Integer cl = binomial(m, l);
    for (std::size_t r = r_star; r <= n; ++r) {
      sum += Rational(cl * binomial(n, r)) * pow_exact(q, static_cast<unsigned long>(l * r));
    }
  }
  sum.canonicalize();
  return sum;
}

namespace {

Rational genupper_base_exact(std::size_t m, std::size_t n, const Rational& q, std::size_t ell_star,
                             std::size_t r_star) {
  check_sizes(m, n, ell_star, r_star);
  if (q <= 0 || q >= 1) throw RangeError("closed forms require 0 < q < 1");
  Rational z = Rational(static_cast<unsigned long>(n)) * pow_exact(q, static_cast<unsigned long>(ell_star));
  z.canonicalize();
  if (z > Rational(1, 2)) {
    throw HypothesisError("genupper requires n q^ell* <= 1/2, got " + to_string(z));
  }
  return z;
}

}  // namespace

double genupper_bound(std::size_t m, std::size_t n, const EdgeProbability& prob, std::size_t ell_star,
                      std::size_t r_star) {
  prob.require_proper();
  genupper_base_exact(m, n, Rational(1) - exact_decimal(prob.p()), ell_star, r_star);
  const double z = static_cast<double>(n) * std::pow(prob.q(), static_cast<double>(ell_star));
  return std::exp2(static_cast<double>(m + 1)) * std::pow(z, static_cast<double>(r_star));
}

Rational genupper_bound_exact(std::size_t m, std::size_t n, const Rational& q, std::size_t ell_star,
                              std::size_t r_star) {
  const Rational z = genupper_base_exact(m, n, q, ell_star, r_star);
  Integer two_pow;
  mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, static_cast<unsigned long>(m + 1));
  Rational r = Rational(two_pow) * pow_exact(z, static_cast<unsigned long>(r_star));
  r.canonicalize();
  return r;
}

double log_inv_q(double x, const EdgeProbability& prob) {
  prob.require_proper();
  return std::log(x) / -std::log1p(-prob.p());
}

long long floor_snapped(double x) {
  const double r = std::nearbyint(x);
  if (std::abs(x - r) <= 1e-9 * std::max(1.0, std::abs(x))) return static_cast<long long>(r);
  return static_cast<long long>(std::floor(x));
}

long long ceil_snapped(double x) {
  const double r = std::nearbyint(x);
  if (std::abs(x - r) <= 1e-9 * std::max(1.0, std::abs(x))) return static_cast<long long>(r);
  return static_cast<long long>(std::ceil(x));
}

RegimeParams RegimeParams::make(std::uint64_t m, std::uint64_t n, const EdgeProbability& prob) {
  prob.require_proper();
  if (m == 0 || n == 0) throw ZeroSideError("both sides of a bipartite graph must be nonempty");
  RegimeParams rp;
  rp.m = m;
  rp.n = n;
  rp.prob = prob;
  rp.log_n = log_inv_q(static_cast<double>(n), prob);
  rp.log_m = log_inv_q(static_cast<double>(m), prob);
  rp.a = floor_snapped(rp.log_n);
  rp.b = floor_snapped(rp.log_m);
  rp.log_k = rp.log_m * rp.log_m;
  rp.lambda = rp.log_n / static_cast<double>(m);
  if (rp.log_n >= rp.log_k) {
    const double log_q_inv = -std::log1p(-prob.p());
    const double ratio = std::exp((rp.log_n - rp.log_k) * log_q_inv);
    const long long whole = floor_snapped(ratio);
    if (whole >= 1) rp.a_prime = floor_snapped(log_inv_q(static_cast<double>(whole), prob));
  }
  return rp;
}

double small_mss_constant(const EdgeProbability& prob) {
  prob.require_proper();
  return std::exp(-(2.0 / prob.q() + 1.0));
}

FlaggedValue exp_small_mss_lower(const RegimeParams& params) {
  const double m = static_cast<double>(params.m);
  const double n = static_cast<double>(params.n);
  if (m < params.log_n || n < params.log_m) {
    throw RangeError("small-set lower bound needs m >= log_{1/q} n and n >= log_{1/q} m");
  }
  const auto a = static_cast<std::uint64_t>(std::max(0LL, params.a));
  const auto b = static_cast<double>(std::max(0LL, params.b));
  FlaggedValue out;
  out.degenerate = a == 0 || b == 0.0;
  const double log_b_pow_b = b == 0.0 ? 0.0 : b * std::log(b);
  out.value = std::exp(std::log(small_mss_constant(params.prob)) + log_binomial(params.m, a) - log_b_pow_b);
  return out;
}

double expected_small_mss(std::size_t m, std::size_t n, const EdgeProbability& prob, std::size_t a,
                          std::size_t b) {
  const double log_pr = log_pr_maximal_stable(m, n, prob, a, b);
  if (log_pr == kNegInf) return 0.0;
  return std::exp(log_binomial(m, a) + log_binomial(n, b) + log_pr);
}

double pair_expectation_B(const PairCountSpec& spec, std::size_t m, std::size_t n, const EdgeProbability& prob) {
  prob.require_proper();
  const auto [i, j, a, b] = spec;
  if (a > m || b > n || i > a || j > b) throw RangeError("pair pattern needs i <= a <= m and j <= b <= n");
  const Integer product = binomial(m, i) * binomial(m - i, a - i) * binomial(m - a, a - i) * binomial(n, j) *
                          binomial(n - j, b - j) * binomial(n - b, b - j);
  if (product == 0) return 0.0;
  const double exponent = 2.0 * static_cast<double>(a) * static_cast<double>(b) -
                          static_cast<double>(i) * static_cast<double>(j);
  const double log_q = std::log1p(-prob.p());
  if (product.get_d() < 1e300 && exponent * -log_q < kLogMagnitudeLimit) {
    return product.get_d() * std::pow(prob.q(), exponent);
  }
  return std::exp(log_of(product) + exponent * log_q);
}

double pair_ratio(const PairCountSpec& spec, std::size_t m, std::size_t n, const EdgeProbability& prob) {
  const double e = expected_small_mss(m, n, prob, spec.a, spec.b);
  if (e == 0.0) throw RangeError("expected count of (a, b) maximal stable sets is zero");
  return pair_expectation_B(spec, m, n, prob) / (e * e);
}

FlaggedValue binary_entropy(double kappa) {
  if (!(kappa >= 0.0 && kappa <= 1.0)) throw RangeError("binary entropy is defined on [0, 1]");
  if (kappa == 0.0 || kappa == 1.0) return {0.0, true};
  const double h = -kappa * std::log2(kappa) - (1.0 - kappa) * std::log1p(-kappa) / std::log(2.0);
  return {h, false};
}

double binom_entropy_lower(std::size_t m, std::size_t k) {
  if (!(0 < k && k < m)) throw RangeError("entropy lower bound needs 0 < k < m");
  const double md = static_cast<double>(m);
  return std::exp2(entropy(static_cast<double>(k) / md) * md) / (md + 1.0);
}

double binom_tail_upper(std::size_t m, double gamma) {
  if (!(gamma > 0.5 && gamma < 1.0)) throw RangeError("binomial tail bound needs 1/2 < gamma < 1");
  return std::exp2(entropy(1.0 - gamma) * static_cast<double>(m));
}

Integer binom_tail_exact(std::size_t m, double gamma) {
  if (!(gamma > 0.5 && gamma < 1.0)) throw RangeError("binomial tail bound needs 1/2 < gamma < 1");
  const Integer from = ceil_of(exact_decimal(gamma) * Rational(static_cast<unsigned long>(m)));
  Integer sum = 0;
  for (std::size_t i = from.get_ui(); i <= m; ++i) sum += binomial(m, i);
  return sum;
}

double induced_matching_prob(std::size_t k, const EdgeProbability& prob) {
  if (k == 0) throw RangeError("induced matching size must be at least 1");
  const double kd = static_cast<double>(k);
  if (k <= 20) {
    double factorial = 1.0;
    for (std::size_t i = 2; i <= k; ++i) factorial *= static_cast<double>(i);
    return factorial * std::pow(prob.p(), kd) * std::pow(prob.q(), kd * kd - kd);
  }
  prob.require_proper();
  return std::exp(std::lgamma(kd + 1.0) + kd * std::log(prob.p()) + (kd * kd - kd) * std::log1p(-prob.p()));
}

FixedConstants fixed_constants(const EdgeProbability& prob) {
  prob.require_proper();
  FixedConstants c;
  const long long three_log = ceil_snapped(3.0 * log_inv_q(2.0, prob));
  c.r_star = three_log + 1;
  c.c_right = std::max(20LL, (three_log + 2) * (three_log + 2));
  c.small_mss_c = small_mss_constant(prob);
  return c;
}

double dominating_vertex_prob(std::size_t m, std::size_t n, const EdgeProbability& prob) {
  const double p_all = std::pow(prob.p(), static_cast<double>(n));
  if (p_all >= 1.0) return m > 0 ? 1.0 : 0.0;
  return -std::expm1(static_cast<double>(m) * std::log1p(-p_all));
}

double largeleft_threshold(std::uint64_t n, const EdgeProbability& prob) {
  return std::pow(static_cast<double>(n), static_cast<double>(fixed_constants(prob).r_star));
}

double squpper_exponent(const EdgeProbability& prob) { return log_inv_q(4.0, prob); }

double squpper_threshold(std::uint64_t n, const EdgeProbability& prob) {
  return 2.0 * std::pow(static_cast<double>(n), squpper_exponent(prob));
}

double hoeffding_exp_threshold(const RegimeParams& params) {
  if (!params.a_prime) throw RangeError("a' is only defined when n >= m^(log_{1/q} m)");
  const auto a_prime = static_cast<std::uint64_t>(std::max(0LL, *params.a_prime));
  if (a_prime > params.m) return 0.0;
  const auto b = static_cast<double>(std::max(0LL, params.b));
  const double log_b_pow_b = b == 0.0 ? 0.0 : b * std::log(b);
  return std::exp(std::log(small_mss_constant(params.prob)) + log_binomial(params.m, a_prime) - log_b_pow_b);
}

double asymptotic_lower_threshold(const RegimeParams& params, double phi) {
  if (!(params.lambda > 0.0 && params.lambda < 1.0)) throw RangeError("lambda must lie in (0, 1)");
  if (!(phi > 0.0)) throw RangeError("phi must be positive");
  return std::exp2((1.0 - phi) * entropy(params.lambda) * static_cast<double>(params.m));
}

double hugeright_gamma(double alpha, double phi) {
  if (!(alpha >= 1.0 / 16.0 && alpha < 0.5)) throw RangeError("alpha must lie in [1/16, 1/2)");
  // (1 - phi) H(kappa) - 2 kappa is concave, so its minimum sits at an endpoint.
  auto f = [&](double kappa) { return (1.0 - phi) * entropy(kappa) - 2.0 * kappa; };
  return std::min(f(1.0 / 16.0), f(alpha));
}

double gigantic_mu(double delta) {
  if (!(delta > 0.0 && delta < 0.5)) throw RangeError("delta must lie in (0, 1/2)");
  return entropy(0.5 - delta / 2.0) - entropy(0.5 - delta);
}

double saturation_lower(std::size_t m, std::uint64_t n, const EdgeProbability& prob) {
  if (m == 0 || n < m) throw RangeError("saturation bound needs 1 <= m <= n");
  const double block = induced_matching_prob(m, prob);
  if (block >= 1.0) return 1.0;
  const double blocks = static_cast<double>(n / m);
  return -std::expm1(blocks * std::log1p(-block));
}

}  // namespace ucs::analytic
