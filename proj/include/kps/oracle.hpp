#pragma once

// Independent ground truth for the analytic engine at desk scale: exhaustive
// enumerations over real key rings, an inclusion-exclusion capture model,
// and seeded Monte-Carlo estimators. Nothing here reads the theta/phi
// tables except exhaustive_scheme_check, whose whole point is to recount
// them from raw blocks.

#include "kps/design.hpp"
#include "kps/kps.hpp"
#include "kps/numeric.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace kps {

struct McConfig {
  std::int64_t trials = 100000;
  std::uint64_t seed = 42;
  int shards = 1;
};

struct McEstimate {
  double estimate = 0.0;
  double std_err = 0.0;  // binomial standard error of the mean
  std::uint64_t successes = 0;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
  int shards = 1;
  std::string algorithm;  // PRNG identifier, for reproducibility reports
};

// Raw key-ring intersection, sorted. The primitive behind every oracle.
std::vector<KeyId> shared_keys(const Kps& kps, const NodeId& a,
                               const NodeId& b);

// Fraction of node pairs sharing at least q keys, by full enumeration.
BigRat exact_pr1(const Kps& kps, std::int64_t cap = 5000);

// Number of third nodes sharing at least q keys with both a and b.
std::int64_t exact_mu(const Kps& kps, const NodeId& a, const NodeId& b,
                      std::int64_t cap = 5000);

// Estimates pr1 + pr2 (exact-beta semantics): sample a uniform node pair,
// then eta distinct other nodes as the common neighborhood; success when
// the pair links directly or some neighbor links to both.
McEstimate mc_two_hop(const Kps& kps, std::int64_t eta, const McConfig& cfg);

// Estimates fail(s): rejection-sample a pair that shares >= q keys, capture
// s distinct other nodes, and fail the link when every shared key occurs in
// some captured node's ring.
McEstimate mc_fail(const Kps& kps, std::int64_t s, const McConfig& cfg);

// Recounts a dual's association classes, theta and phi from its raw blocks
// and compares against the stored tables.
VerifyReport exhaustive_scheme_check(const DualDesign& dd);

// The exact mean of the mc_fail estimand, for any s: averages, over every
// qualifying pair, the hypergeometric probability that s captured nodes
// jointly cover all shared keys, by inclusion-exclusion over key subsets
// with per-subset avoidance counts taken from the real key rings.
BigRat exhaustive_fail(const Kps& kps, std::int64_t s, std::int64_t cap = 200);

}  // namespace kps
