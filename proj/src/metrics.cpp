// Connectivity and resiliency formulas in exact rational arithmetic.

#include "kps/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kps {

namespace {

const double kLeeStinsonTolerance = 1e-12;

BigRat ratio(std::int64_t num, std::int64_t den) {
  return BigRat(BigInt(num)) / BigInt(den);
}

std::int64_t min_block_size(const Kps& kps) {
  std::int64_t m = kps.duals[0].k_i;
  for (const auto& dd : kps.duals) m = std::min<std::int64_t>(m, dd.k_i);
  return m;
}

// Probability that s captured nodes jointly hold every key the pair shares,
// for one tuple in Delta. Coordinates with j = 1 contribute no shared keys.
// For the others, a captured node settles coordinate i when its i-th block
// equals the pair's common block (j = 0) or contains the single common
// symbol (j = 2); inclusion-exclusion over the coordinate subsets that stay
// unsettled gives the probability, with sigma(set) counting the nodes whose
// blocks avoid every marked coordinate.
BigRat capture_probability(const Kps& kps, const AssocTuple& t,
                           std::int64_t s) {
  std::vector<int> omega;
  std::int64_t unconstrained = 1;  // factors of the j = 1 coordinates
  for (int i = 0; i < kps.t(); ++i) {
    if (t[static_cast<size_t>(i)] != 1)
      omega.push_back(i);
    else
      unconstrained *= kps.duals[static_cast<size_t>(i)].b();
  }
  const BigInt all = binomial(BigInt(kps.n - 2), s);
  BigRat p = 0;
  for (std::uint32_t mask = 0; mask < (1u << omega.size()); ++mask) {
    std::int64_t sigma = unconstrained;
    int bits = 0;
    for (size_t b = 0; b < omega.size(); ++b) {
      const int i = omega[b];
      const auto& dd = kps.duals[static_cast<size_t>(i)];
      if (mask & (1u << b)) {
        ++bits;
        sigma *= t[static_cast<size_t>(i)] == 0 ? dd.b() - 1
                                                : dd.b() - dd.r_i;
      } else {
        sigma *= dd.b();
      }
    }
    // The empty subset counts all of the n-2 other nodes, not the plain
    // product (which would also count the pair itself).
    const BigRat term = mask == 0
                            ? BigRat(1)
                            : BigRat(binomial(BigInt(sigma), s)) / all;
    p += (bits % 2 == 0) ? term : -term;
  }
  return p;
}

}  // namespace

BigRat pr1(const Kps& kps) {
  const DeltaSets sets = delta_set(kps);
  BigInt num = 0;
  for (const AssocTuple& t : sets.delta) num += n_count(kps, t);
  return BigRat(num) / BigInt(kps.n - 1);
}

BigRat beta_prob(std::int64_t n, std::int64_t mu, std::int64_t eta,
                 BetaMode mode) {
  if (mu < 0 || mu > n - 2)
    throw std::invalid_argument("beta_prob: mu must lie in 0..n-2");
  if (eta < 0) throw std::invalid_argument("beta_prob: eta must be >= 0");
  if (mu == 0 || eta == 0) return BigRat(0);
  if (mode == BetaMode::approx)
    return BigRat(1) - rat_pow(BigRat(1) - ratio(mu, n - 2), eta);
  // Drawing eta of the n-2 candidates without replacement misses all mu
  // helpers with probability prod (n-2-mu-i)/(n-2-i).
  BigRat miss = 1;
  for (std::int64_t i = 0; i < eta; ++i) {
    if (n - 2 - mu - i <= 0) return BigRat(1);
    miss *= ratio(n - 2 - mu - i, n - 2 - i);
  }
  return BigRat(1) - miss;
}

BigRat pr2(const Kps& kps, std::int64_t eta, BetaMode mode) {
  const DeltaSets sets = delta_set(kps);
  BigRat sum = 0;
  for (const AssocTuple& t : sets.delta_bar)
    sum += ratio(n_count(kps, t), kps.n - 1) *
           beta_prob(kps.n, mu(kps, t), eta, mode);
  return sum;
}

BigRat pr2_lower_bound(const Kps& kps, std::int64_t eta) {
  const DeltaSets sets = delta_set(kps);
  if (sets.delta_bar.empty())
    throw std::invalid_argument(
        "pr2_lower_bound: every tuple meets the threshold, no bound to take");
  std::int64_t mu_star = mu(kps, sets.delta_bar.front());
  for (const AssocTuple& t : sets.delta_bar)
    mu_star = std::min(mu_star, mu(kps, t));
  const BigRat bound =
      (BigRat(1) - pr1(kps)) * beta_prob(kps.n, mu_star, eta, BetaMode::approx);
  if (bound > pr2(kps, eta, BetaMode::approx))
    throw std::logic_error("pr2_lower_bound: bound exceeds pr2");
  return bound;
}

FailResult fail_s(const Kps& kps, std::int64_t s, FailMode mode) {
  if (s < 0) throw std::invalid_argument("fail_s: s must be >= 0");
  if (s > kps.n - 2)
    throw std::invalid_argument("fail_s: cannot capture more than n-2 nodes");
  FailResult res;
  const std::int64_t min_k = min_block_size(kps);
  res.precondition_ok = kps.t() == 1 || s < min_k;
  if (!res.precondition_ok)
    res.warning =
        mode == FailMode::approx
            ? "s = " + std::to_string(s) +
                  " is not below the smallest dual block size " +
                  std::to_string(min_k) +
                  "; the closed formula is heuristic in this range"
            : "s = " + std::to_string(s) +
                  " is not below the smallest dual block size " +
                  std::to_string(min_k) +
                  "; captured nodes could cover a shared block piecewise, "
                  "so this value is a lower bound";
  const DeltaSets sets = delta_set(kps);
  BigInt weight_sum = 0;
  for (const AssocTuple& t : sets.delta) weight_sum += n_count(kps, t);

  if (mode == FailMode::exact) {
    BigRat acc = 0;
    for (const AssocTuple& t : sets.delta)
      acc += BigRat(BigInt(n_count(kps, t))) * capture_probability(kps, t, s);
    res.value = acc / weight_sum;
    return res;
  }

  const BigRat x = rat_pow(ratio(kps.n, kps.n - 2), s);
  BigRat acc = 0;
  for (const AssocTuple& t : sets.delta) {
    BigRat xi = 1;
    for (int i = 0; i < kps.t(); ++i) {
      const auto& dd = kps.duals[static_cast<size_t>(i)];
      const int j = t[static_cast<size_t>(i)];
      if (j == 0)
        xi *= BigRat(1) - rat_pow(ratio(dd.b() - 1, dd.b()), s);
      else if (j == 2)
        xi *= BigRat(1) - rat_pow(ratio(dd.b() - dd.r_i, dd.b()), s);
    }
    acc += BigRat(BigInt(n_count(kps, t))) * xi;
  }
  res.value = BigRat(1) - x + x * (acc / weight_sum);
  return res;
}

ConnectivityReport connectivity_report(const Kps& kps,
                                       const std::vector<std::int64_t>& etas,
                                       BetaMode mode) {
  ConnectivityReport rep;
  rep.mode = mode;
  rep.pr1 = pr1(kps);
  for (const AssocTuple& t : index_set(kps))
    rep.n_table.emplace_back(t, n_count(kps, t));
  const DeltaSets sets = delta_set(kps);
  for (const AssocTuple& t : sets.delta_bar)
    rep.mu_table.emplace_back(t, mu(kps, t));
  for (std::int64_t eta : etas) {
    BigRat p2 = 0;
    for (const auto& [t, m] : rep.mu_table)
      p2 += ratio(n_count(kps, t), kps.n - 1) *
            beta_prob(kps.n, m, eta, mode);
    rep.pr2_by_eta.emplace_back(eta, p2);
    rep.pr_by_eta.emplace_back(eta, rep.pr1 + p2);
  }
  return rep;
}

ResiliencyReport resiliency_report(const Kps& kps,
                                   const std::vector<std::int64_t>& ss,
                                   FailMode mode) {
  ResiliencyReport rep;
  rep.mode = mode;
  for (std::int64_t s : ss) rep.fail_by_s.emplace_back(s, fail_s(kps, s, mode));
  const DeltaSets sets = delta_set(kps);
  for (const AssocTuple& t : sets.delta) {
    std::vector<BigRat> xis;
    for (std::int64_t s : ss) {
      BigRat xi = 1;
      for (int i = 0; i < kps.t(); ++i) {
        const auto& dd = kps.duals[static_cast<size_t>(i)];
        const int j = t[static_cast<size_t>(i)];
        if (j == 0)
          xi *= BigRat(1) - rat_pow(ratio(dd.b() - 1, dd.b()), s);
        else if (j == 2)
          xi *= BigRat(1) - rat_pow(ratio(dd.b() - dd.r_i, dd.b()), s);
      }
      xis.push_back(xi);
    }
    rep.xi_table.emplace_back(t, std::move(xis));
  }
  return rep;
}

LeeStinsonReport lee_stinson_check(int p, int k_tilde, std::int64_t eta,
                                   std::int64_t s) {
  const auto mols = cyclic_mols(p, k_tilde - 2);
  const BlockDesign d = latin_square_pbib(p, k_tilde, mols);
  Kps kps;
  {
    std::vector<DualDesign> duals;
    duals.push_back(dual(d));
    kps = build(std::move(duals), 1);
  }
  LeeStinsonReport rep;
  rep.pr1_engine = pr1(kps);
  rep.pr2_engine = pr2(kps, eta, BetaMode::approx);
  rep.fail_engine = fail_s(kps, s).value;
  const std::int64_t pp = static_cast<std::int64_t>(p) * p;
  rep.pr1_closed = ratio(k_tilde, p + 1);
  rep.pr2_closed =
      (BigRat(1) - ratio(k_tilde, p + 1)) *
      (BigRat(1) -
       rat_pow(BigRat(1) - ratio(static_cast<std::int64_t>(k_tilde) *
                                     (k_tilde - 1),
                                 pp - 2),
               eta));
  rep.fail_closed = BigRat(1) - rat_pow(ratio(pp - p, pp - 2), s);
  rep.max_abs_diff = std::max(
      {std::abs(to_double(rep.pr1_engine - rep.pr1_closed)),
       std::abs(to_double(rep.pr2_engine - rep.pr2_closed)),
       std::abs(to_double(rep.fail_engine - rep.fail_closed))});
  rep.ok = rep.max_abs_diff <= kLeeStinsonTolerance;
  return rep;
}

}  // namespace kps
