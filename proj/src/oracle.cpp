// Exhaustive and Monte-Carlo oracles. These deliberately re-derive
// everything from key rings and raw blocks; agreement with the analytic
// engine is asserted in the test suite, not assumed here.

#include "kps/oracle.hpp"

#include "kps/rng.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace kps {

namespace {

std::int64_t shared_count(const std::vector<KeyId>& a,
                          const std::vector<KeyId>& b) {
  std::int64_t count = 0;
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j])
      ++i;
    else if (b[j] < a[i])
      ++j;
    else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

// All key rings up front; callers cap n well below memory concerns.
std::vector<std::vector<KeyId>> all_rings(const Kps& kps) {
  std::vector<std::vector<KeyId>> rings;
  rings.reserve(static_cast<size_t>(kps.n));
  for (std::int64_t u = 0; u < kps.n; ++u)
    rings.push_back(node_keys(kps, node_from_index(kps, u)));
  return rings;
}

void check_cap(const Kps& kps, std::int64_t cap, const char* what) {
  if (kps.n > cap)
    throw std::invalid_argument(std::string(what) + ": n = " +
                                std::to_string(kps.n) +
                                " exceeds the enumeration cap " +
                                std::to_string(cap));
}

void check_cfg(const McConfig& cfg, const char* what) {
  if (cfg.trials < 1)
    throw std::invalid_argument(std::string(what) + ": need trials >= 1");
  if (cfg.shards < 1)
    throw std::invalid_argument(std::string(what) + ": need shards >= 1");
}

McEstimate finish(const McConfig& cfg, std::uint64_t successes) {
  McEstimate est;
  est.successes = successes;
  est.trials = cfg.trials;
  est.seed = cfg.seed;
  est.shards = cfg.shards;
  est.algorithm = kRngAlgorithm;
  const double p =
      static_cast<double>(successes) / static_cast<double>(cfg.trials);
  est.estimate = p;
  est.std_err = std::sqrt(p * (1.0 - p) / static_cast<double>(cfg.trials));
  return est;
}

// Distinct uniform node indices avoiding both pair members and each other.
void sample_others(Xoshiro256ss& rng, std::int64_t n, std::int64_t u,
                   std::int64_t w, std::int64_t count,
                   std::vector<std::int64_t>& out) {
  out.clear();
  while (static_cast<std::int64_t>(out.size()) < count) {
    const std::int64_t x =
        static_cast<std::int64_t>(rng.next_below(static_cast<std::uint64_t>(n)));
    if (x == u || x == w) continue;
    if (std::find(out.begin(), out.end(), x) != out.end()) continue;
    out.push_back(x);
  }
}

}  // namespace

std::vector<KeyId> shared_keys(const Kps& kps, const NodeId& a,
                               const NodeId& b) {
  const auto ka = node_keys(kps, a);
  const auto kb = node_keys(kps, b);
  std::vector<KeyId> out;
  std::set_intersection(ka.begin(), ka.end(), kb.begin(), kb.end(),
                        std::back_inserter(out));
  return out;
}

BigRat exact_pr1(const Kps& kps, std::int64_t cap) {
  check_cap(kps, cap, "exact_pr1");
  const auto rings = all_rings(kps);
  BigInt hits = 0;
  for (std::int64_t u = 0; u < kps.n; ++u)
    for (std::int64_t w = u + 1; w < kps.n; ++w)
      if (shared_count(rings[static_cast<size_t>(u)],
                       rings[static_cast<size_t>(w)]) >= kps.q)
        ++hits;
  return BigRat(hits) / binomial(BigInt(kps.n), 2);
}

std::int64_t exact_mu(const Kps& kps, const NodeId& a, const NodeId& b,
                      std::int64_t cap) {
  check_cap(kps, cap, "exact_mu");
  const auto ka = node_keys(kps, a);
  const auto kb = node_keys(kps, b);
  const std::int64_t ia = node_index(kps, a);
  const std::int64_t ib = node_index(kps, b);
  if (ia == ib) throw std::invalid_argument("exact_mu: nodes must differ");
  std::int64_t count = 0;
  for (std::int64_t x = 0; x < kps.n; ++x) {
    if (x == ia || x == ib) continue;
    const auto kx = node_keys(kps, node_from_index(kps, x));
    if (shared_count(kx, ka) >= kps.q && shared_count(kx, kb) >= kps.q)
      ++count;
  }
  return count;
}

McEstimate mc_two_hop(const Kps& kps, std::int64_t eta, const McConfig& cfg) {
  check_cfg(cfg, "mc_two_hop");
  if (eta < 0 || eta > kps.n - 2)
    throw std::invalid_argument("mc_two_hop: eta must lie in 0..n-2");
  const std::uint64_t n = static_cast<std::uint64_t>(kps.n);
  std::uint64_t successes = 0;
  std::vector<std::int64_t> hood;
  const std::int64_t base = cfg.trials / cfg.shards;
  const std::int64_t rem = cfg.trials % cfg.shards;
  for (int shard = 0; shard < cfg.shards; ++shard) {
    Xoshiro256ss rng(shard_seed(cfg.seed, static_cast<std::uint64_t>(shard)));
    const std::int64_t todo = base + (shard < rem ? 1 : 0);
    for (std::int64_t trial = 0; trial < todo; ++trial) {
      const std::int64_t u = static_cast<std::int64_t>(rng.next_below(n));
      std::int64_t w = static_cast<std::int64_t>(rng.next_below(n - 1));
      if (w >= u) ++w;
      const auto ku = node_keys(kps, node_from_index(kps, u));
      const auto kw = node_keys(kps, node_from_index(kps, w));
      if (shared_count(ku, kw) >= kps.q) {
        ++successes;
        continue;
      }
      sample_others(rng, kps.n, u, w, eta, hood);
      for (std::int64_t x : hood) {
        const auto kx = node_keys(kps, node_from_index(kps, x));
        if (shared_count(kx, ku) >= kps.q && shared_count(kx, kw) >= kps.q) {
          ++successes;
          break;
        }
      }
    }
  }
  return finish(cfg, successes);
}

McEstimate mc_fail(const Kps& kps, std::int64_t s, const McConfig& cfg) {
  check_cfg(cfg, "mc_fail");
  if (s < 0 || s > kps.n - 2)
    throw std::invalid_argument("mc_fail: s must lie in 0..n-2");
  if (s == 0) return finish(cfg, 0);
  const std::uint64_t n = static_cast<std::uint64_t>(kps.n);
  std::uint64_t failures = 0;
  std::vector<std::int64_t> captured;
  const std::int64_t base = cfg.trials / cfg.shards;
  const std::int64_t rem = cfg.trials % cfg.shards;
  for (int shard = 0; shard < cfg.shards; ++shard) {
    Xoshiro256ss rng(shard_seed(cfg.seed, static_cast<std::uint64_t>(shard)));
    const std::int64_t todo = base + (shard < rem ? 1 : 0);
    for (std::int64_t trial = 0; trial < todo; ++trial) {
      // Condition on a secured pair by resampling until one turns up.
      std::int64_t u = 0, w = 0;
      std::vector<KeyId> shared;
      while (true) {
        u = static_cast<std::int64_t>(rng.next_below(n));
        w = static_cast<std::int64_t>(rng.next_below(n - 1));
        if (w >= u) ++w;
        shared = shared_keys(kps, node_from_index(kps, u),
                             node_from_index(kps, w));
        if (static_cast<std::int64_t>(shared.size()) >= kps.q) break;
      }
      sample_others(rng, kps.n, u, w, s, captured);
      std::vector<std::vector<KeyId>> rings;
      rings.reserve(captured.size());
      for (std::int64_t x : captured)
        rings.push_back(node_keys(kps, node_from_index(kps, x)));
      bool all_covered = true;
      for (const KeyId& key : shared) {
        bool covered = false;
        for (const auto& ring : rings)
          if (std::binary_search(ring.begin(), ring.end(), key)) {
            covered = true;
            break;
          }
        if (!covered) {
          all_covered = false;
          break;
        }
      }
      if (all_covered) ++failures;
    }
  }
  return finish(cfg, failures);
}

VerifyReport exhaustive_scheme_check(const DualDesign& dd) {
  const int b = dd.b();
  const size_t bs = static_cast<size_t>(b);
  if (dd.block_assoc.size() != bs * bs)
    return {false, "association table has the wrong size"};
  // Membership bitmaps, then recount every pair's intersection directly.
  std::vector<std::vector<char>> member(
      bs, std::vector<char>(static_cast<size_t>(dd.v()), 0));
  for (int x = 0; x < b; ++x)
    for (int sym : dd.base.blocks[static_cast<size_t>(x)])
      member[static_cast<size_t>(x)][static_cast<size_t>(sym)] = 1;
  std::vector<std::uint8_t> assoc(bs * bs, 0);
  for (int x = 0; x < b; ++x)
    for (int y = 0; y < b; ++y) {
      if (x == y) continue;
      int common = 0;
      for (int sym : dd.base.blocks[static_cast<size_t>(x)])
        common += member[static_cast<size_t>(y)][static_cast<size_t>(sym)];
      if (common > 1)
        return {false, "blocks " + std::to_string(x) + " and " +
                           std::to_string(y) + " share " +
                           std::to_string(common) + " symbols"};
      assoc[static_cast<size_t>(x) * bs + y] = common == 0 ? 1 : 2;
    }
  for (size_t i = 0; i < assoc.size(); ++i)
    if (assoc[i] != dd.block_assoc[i])
      return {false, "stored association class differs at pair (" +
                         std::to_string(i / bs) + "," +
                         std::to_string(i % bs) + ")"};
  for (int x = 0; x < b; ++x) {
    std::int64_t c[3] = {0, 0, 0};
    for (int y = 0; y < b; ++y) ++c[assoc[static_cast<size_t>(x) * bs + y]];
    for (int j = 0; j < 3; ++j)
      if (c[j] != dd.theta[static_cast<size_t>(j)])
        return {false, "theta_" + std::to_string(j) + " recounts to " +
                           std::to_string(c[j]) + " at block " +
                           std::to_string(x) + ", stored " +
                           std::to_string(dd.theta[static_cast<size_t>(j)])};
  }
  if (dd.in_Q != (dd.theta[1] > 0))
    return {false, "in_Q flag disagrees with theta_1"};
  for (int x = 0; x < b; ++x)
    for (int y = 0; y < b; ++y) {
      if (x == y) continue;
      const int cls = assoc[static_cast<size_t>(x) * bs + y];
      std::int64_t cnt[3][3] = {};
      for (int z = 0; z < b; ++z)
        ++cnt[assoc[static_cast<size_t>(x) * bs + z]]
             [assoc[static_cast<size_t>(y) * bs + z]];
      for (int u = 0; u < 3; ++u)
        for (int w = 0; w < 3; ++w)
          if (cnt[u][w] != dd.phi[cls][u][w])
            return {false, "phi^" + std::to_string(cls) + "_{" +
                               std::to_string(u) + "," + std::to_string(w) +
                               "} recounts to " + std::to_string(cnt[u][w]) +
                               " on pair (" + std::to_string(x) + "," +
                               std::to_string(y) + "), stored " +
                               std::to_string(dd.phi[cls][u][w])};
    }
  return {true, "stored tables match the raw recount"};
}

BigRat exhaustive_fail(const Kps& kps, std::int64_t s, std::int64_t cap) {
  check_cap(kps, cap, "exhaustive_fail");
  if (s < 0 || s > kps.n - 2)
    throw std::invalid_argument("exhaustive_fail: s must lie in 0..n-2");
  const auto rings = all_rings(kps);
  // C(x, s) for every possible avoidance count x.
  std::vector<BigInt> choose(static_cast<size_t>(kps.n - 1));
  for (std::int64_t x = 0; x <= kps.n - 2; ++x)
    choose[static_cast<size_t>(x)] = binomial(BigInt(x), s);
  const BigInt all = choose[static_cast<size_t>(kps.n - 2)];

  BigRat total = 0;
  std::int64_t pairs = 0;
  std::vector<KeyId> shared;
  for (std::int64_t u = 0; u < kps.n; ++u)
    for (std::int64_t w = u + 1; w < kps.n; ++w) {
      const auto& ru = rings[static_cast<size_t>(u)];
      const auto& rw = rings[static_cast<size_t>(w)];
      shared.clear();
      std::set_intersection(ru.begin(), ru.end(), rw.begin(), rw.end(),
                            std::back_inserter(shared));
      const size_t L = shared.size();
      if (static_cast<std::int64_t>(L) < kps.q) continue;
      if (L > 20)
        throw std::invalid_argument(
            "exhaustive_fail: pair shares more than 20 keys");
      ++pairs;
      // f[mask] = number of other nodes holding exactly this key subset,
      // then a subset-sum transform turns it into "holding a subset of
      // mask", i.e. avoiding everything outside the mask.
      const std::uint32_t full = (1u << L) - 1u;
      std::vector<std::int64_t> f(static_cast<size_t>(full) + 1, 0);
      for (std::int64_t x = 0; x < kps.n; ++x) {
        if (x == u || x == w) continue;
        std::uint32_t m = 0;
        const auto& rx = rings[static_cast<size_t>(x)];
        for (size_t i = 0; i < L; ++i)
          if (std::binary_search(rx.begin(), rx.end(), shared[i]))
            m |= 1u << i;
        ++f[m];
      }
      for (size_t bit = 0; bit < L; ++bit)
        for (std::uint32_t m = 0; m <= full; ++m)
          if (m & (1u << bit)) f[m] += f[m ^ (1u << bit)];
      // Inclusion-exclusion over the key subsets that stay uncovered.
      BigRat p = 0;
      for (std::uint32_t sub = 0; sub <= full; ++sub) {
        const std::int64_t avoid = f[full ^ sub];
        const BigRat term = BigRat(choose[static_cast<size_t>(avoid)]) / all;
        p += (std::popcount(sub) % 2 == 0) ? term : -term;
      }
      total += p;
    }
  if (pairs == 0)
    throw std::logic_error("exhaustive_fail: no pair meets the threshold");
  return total / BigInt(pairs);
}

}  // namespace kps
