#pragma once

// Analytic connectivity and resiliency metrics of a key predistribution
// scheme, all computed in exact rational arithmetic.
//
//   pr1      probability two random nodes share >= q keys directly
//   beta     probability a common neighborhood of eta nodes contains one of
//            the mu helper nodes; exact hypergeometric form or the power
//            approximation
//   pr2      rescue probability through such a helper, summed over the
//            tuples that miss the threshold
//   fail_s   conditional probability a secure link is exposed when s other
//            nodes are captured; the closed product formula (approx) or an
//            inclusion-exclusion form over block-coverage events (exact)
//
// Values leave this module as rationals; rendering to decimals is the
// caller's concern.

#include "kps/kps.hpp"
#include "kps/numeric.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace kps {

enum class BetaMode { exact, approx };
enum class FailMode { approx, exact };

// Share of associate tuples meeting the threshold, weighted by n counts.
BigRat pr1(const Kps& kps);

// n is the node count; the helper pool has n-2 candidates, mu of which
// qualify. Exact mode draws the eta neighbors without replacement.
BigRat beta_prob(std::int64_t n, std::int64_t mu, std::int64_t eta,
                 BetaMode mode);

BigRat pr2(const Kps& kps, std::int64_t eta, BetaMode mode);

// (1 - pr1) * beta evaluated at the smallest mu over the missing tuples;
// a lower bound for pr2 in approx mode.
BigRat pr2_lower_bound(const Kps& kps, std::int64_t eta);

struct FailResult {
  BigRat value;
  bool precondition_ok = true;  // s below every dual block size (or t = 1)
  std::string warning;          // empty when precondition_ok
};

// Approx mode is the closed formula over xi products. Exact mode computes,
// per qualifying tuple, the probability that s captured nodes jointly cover
// all shared keys, by inclusion-exclusion over per-design coverage events;
// it is the true capture probability whenever s is below every dual block
// size (partial coverage of a whole shared block is then impossible), and a
// lower bound beyond.
FailResult fail_s(const Kps& kps, std::int64_t s,
                  FailMode mode = FailMode::approx);

struct ConnectivityReport {
  BetaMode mode = BetaMode::approx;
  BigRat pr1;
  std::vector<std::pair<std::int64_t, BigRat>> pr2_by_eta;
  std::vector<std::pair<std::int64_t, BigRat>> pr_by_eta;  // pr1 + pr2
  std::vector<std::pair<AssocTuple, std::int64_t>> n_table;   // over I
  std::vector<std::pair<AssocTuple, std::int64_t>> mu_table;  // over Delta-bar
};

ConnectivityReport connectivity_report(const Kps& kps,
                                       const std::vector<std::int64_t>& etas,
                                       BetaMode mode);

struct ResiliencyReport {
  FailMode mode = FailMode::approx;
  std::vector<std::pair<std::int64_t, FailResult>> fail_by_s;
  // xi product per qualifying tuple, one value per requested s
  std::vector<std::pair<AssocTuple, std::vector<BigRat>>> xi_table;
};

ResiliencyReport resiliency_report(const Kps& kps,
                                   const std::vector<std::int64_t>& ss,
                                   FailMode mode);

// Single-design KPS from a Latin-square design with cyclic squares: the
// engine output must match the known closed forms
//   pr1 = k/(p+1)
//   pr2 = (1 - k/(p+1)) * (1 - (1 - k(k-1)/(p^2-2))^eta)
//   fail = 1 - ((p^2-p)/(p^2-2))^s
struct LeeStinsonReport {
  BigRat pr1_engine, pr1_closed;
  BigRat pr2_engine, pr2_closed;
  BigRat fail_engine, fail_closed;
  double max_abs_diff = 0.0;
  bool ok = false;
};

LeeStinsonReport lee_stinson_check(int p, int k_tilde, std::int64_t eta,
                                   std::int64_t s);

}  // namespace kps
