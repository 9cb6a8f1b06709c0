// Block design constructors, exhaustive verifiers, and duals. Everything
// downstream trusts the verifiers rather than the constructions, so each
// constructor runs its own verification pass before returning.

#include "kps/design.hpp"

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kps {

namespace {

// Bookkeeping shared by every design: symbol range, strictly increasing
// blocks, uniform block size and replication matching the declared k* and
// r*. Returns an empty string when everything holds.
std::string structural_error(const BlockDesign& d) {
  if (d.v_star < 2) return "design must have at least 2 symbols";
  if (d.blocks.empty()) return "design must have at least one block";
  std::vector<int> rep(static_cast<size_t>(d.v_star), 0);
  for (size_t i = 0; i < d.blocks.size(); ++i) {
    const auto& blk = d.blocks[i];
    if (static_cast<int>(blk.size()) != d.k_star)
      return "block " + std::to_string(i) + " has " +
             std::to_string(blk.size()) + " symbols, expected k* = " +
             std::to_string(d.k_star);
    int prev = -1;
    for (int sym : blk) {
      if (sym < 0 || sym >= d.v_star)
        return "block " + std::to_string(i) + " contains symbol " +
               std::to_string(sym) + " outside 0.." +
               std::to_string(d.v_star - 1);
      if (sym <= prev)
        return "block " + std::to_string(i) +
               " is not strictly increasing";
      prev = sym;
      ++rep[static_cast<size_t>(sym)];
    }
  }
  for (int x = 0; x < d.v_star; ++x)
    if (rep[static_cast<size_t>(x)] != d.r_star)
      return "symbol " + std::to_string(x) + " occurs in " +
             std::to_string(rep[static_cast<size_t>(x)]) +
             " blocks, expected r* = " + std::to_string(d.r_star);
  return "";
}

// Number of blocks containing both x and y, for every unordered pair.
std::vector<std::int64_t> concurrences(const BlockDesign& d) {
  const size_t v = static_cast<size_t>(d.v_star);
  std::vector<std::int64_t> conc(v * v, 0);
  for (const auto& blk : d.blocks)
    for (size_t i = 0; i < blk.size(); ++i)
      for (size_t j = i + 1; j < blk.size(); ++j) {
        size_t x = static_cast<size_t>(blk[i]);
        size_t y = static_cast<size_t>(blk[j]);
        ++conc[x * v + y];
        ++conc[y * v + x];
      }
  return conc;
}

std::string design_shape(const BlockDesign& d) {
  return "v*=" + std::to_string(d.v_star) +
         ", b*=" + std::to_string(d.blocks.size()) +
         ", r*=" + std::to_string(d.r_star) +
         ", k*=" + std::to_string(d.k_star);
}

// Skolem pairing search: partition the target difference set into pairs
// (a_r, a_r + r) for r = 1..h. The target is {1..2h} when h = 0,1 (mod 4)
// and {1..2h+1} minus {2h} (the hooked variant) otherwise. Backtracks from
// the largest difference down since it is the most constrained.
bool skolem_search(int r, std::vector<bool>& avail,
                   std::vector<std::pair<int, int>>& pairs) {
  if (r == 0) return true;
  const int top = static_cast<int>(avail.size()) - 1;
  for (int a = 1; a + r <= top; ++a) {
    if (!avail[static_cast<size_t>(a)] || !avail[static_cast<size_t>(a + r)])
      continue;
    avail[static_cast<size_t>(a)] = avail[static_cast<size_t>(a + r)] = false;
    pairs[static_cast<size_t>(r)] = {a, a + r};
    if (skolem_search(r - 1, avail, pairs)) return true;
    avail[static_cast<size_t>(a)] = avail[static_cast<size_t>(a + r)] = true;
  }
  return false;
}

std::vector<std::pair<int, int>> skolem_pairs(int h) {
  const bool pure = (h % 4 == 0 || h % 4 == 1);
  const int top = pure ? 2 * h : 2 * h + 1;
  std::vector<bool> avail(static_cast<size_t>(top) + 1, true);
  avail[0] = false;
  if (!pure) avail[static_cast<size_t>(2 * h)] = false;
  std::vector<std::pair<int, int>> pairs(static_cast<size_t>(h) + 1);
  if (!skolem_search(h, avail, pairs))
    throw std::runtime_error(
        "steiner_triple_skolem: no Skolem pairing found for h = " +
        std::to_string(h));
  return pairs;
}

}  // namespace

VerifyReport verify_bib(const BlockDesign& d, std::int64_t lambda) {
  auto err = structural_error(d);
  if (!err.empty()) return {false, err};
  const size_t v = static_cast<size_t>(d.v_star);
  auto conc = concurrences(d);
  for (size_t x = 0; x < v; ++x)
    for (size_t y = x + 1; y < v; ++y)
      if (conc[x * v + y] != lambda)
        return {false, "symbols " + std::to_string(x) + " and " +
                           std::to_string(y) + " occur together in " +
                           std::to_string(conc[x * v + y]) +
                           " blocks, expected lambda = " +
                           std::to_string(lambda)};
  return {true, "BIB(lambda=" + std::to_string(lambda) + ") verified: " +
                    design_shape(d)};
}

VerifyReport verify_pbib(const BlockDesign& d, const AssociationScheme& s,
                         std::int64_t lambda1, std::int64_t lambda2) {
  auto err = structural_error(d);
  if (!err.empty()) return {false, err};
  if (s.v_star != d.v_star)
    return {false, "scheme has " + std::to_string(s.v_star) +
                       " symbols but the design has " +
                       std::to_string(d.v_star)};
  const size_t v = static_cast<size_t>(d.v_star);
  auto conc = concurrences(d);
  for (size_t x = 0; x < v; ++x)
    for (size_t y = x + 1; y < v; ++y) {
      const int cls = s.assoc(static_cast<int>(x), static_cast<int>(y));
      const std::int64_t want = cls == 1 ? lambda1 : lambda2;
      if (conc[x * v + y] != want)
        return {false, "associate-" + std::to_string(cls) + " pair (" +
                           std::to_string(x) + "," + std::to_string(y) +
                           ") occurs together in " +
                           std::to_string(conc[x * v + y]) +
                           " blocks, expected " + std::to_string(want)};
    }
  return {true, "PBIB(lambda1=" + std::to_string(lambda1) +
                    ", lambda2=" + std::to_string(lambda2) +
                    ") verified: " + design_shape(d)};
}

std::optional<DesignRole> classify_role(const BlockDesign& d) {
  if (!structural_error(d).empty()) return std::nullopt;
  const size_t v = static_cast<size_t>(d.v_star);
  auto conc = concurrences(d);
  std::int64_t lo = conc[1], hi = conc[1];
  for (size_t x = 0; x < v; ++x)
    for (size_t y = x + 1; y < v; ++y) {
      lo = std::min(lo, conc[x * v + y]);
      hi = std::max(hi, conc[x * v + y]);
    }
  if (lo == hi) {
    DesignRole role;
    role.kind = RoleKind::bib;
    role.lambda = lo;
    return role;
  }
  if (lo == 0 && hi == 1) {
    DesignRole role;
    role.kind = RoleKind::pbib;
    role.lambda1 = 0;
    role.lambda2 = 1;
    return role;
  }
  return std::nullopt;
}

BlockDesign pbib_second_associates(const AssociationScheme& s) {
  if (s.theta[2] <= 0)
    throw std::invalid_argument(
        "pbib_second_associates: scheme has no second associates");
  BlockDesign d;
  d.v_star = s.v_star;
  for (int x = 0; x < s.v_star; ++x)
    for (int y = x + 1; y < s.v_star; ++y)
      if (s.assoc(x, y) == 2) d.blocks.push_back({x, y});
  d.k_star = 2;
  d.r_star = static_cast<int>(s.theta[2]);
  d.role = DesignRole{RoleKind::pbib, 0, 0, 1};
  auto rep = verify_pbib(d, s, 0, 1);
  if (!rep.ok)
    throw std::runtime_error("pbib_second_associates: " + rep.message);
  return d;
}

BlockDesign latin_square_pbib(int p, int k_tilde,
                              const std::vector<LatinSquare>& mols) {
  AssociationScheme s = latin_square_scheme(p, k_tilde, mols);
  BlockDesign d;
  d.v_star = p * p;
  for (int r = 0; r < p; ++r) {
    std::vector<int> blk(static_cast<size_t>(p));
    for (int c = 0; c < p; ++c) blk[static_cast<size_t>(c)] = r * p + c;
    d.blocks.push_back(std::move(blk));
  }
  for (int c = 0; c < p; ++c) {
    std::vector<int> blk(static_cast<size_t>(p));
    for (int r = 0; r < p; ++r) blk[static_cast<size_t>(r)] = r * p + c;
    d.blocks.push_back(std::move(blk));
  }
  for (const auto& sq : mols)
    for (int letter = 0; letter < p; ++letter) {
      std::vector<int> blk;
      blk.reserve(static_cast<size_t>(p));
      for (int r = 0; r < p; ++r)
        for (int c = 0; c < p; ++c)
          if (sq[static_cast<size_t>(r)][static_cast<size_t>(c)] == letter)
            blk.push_back(r * p + c);
      d.blocks.push_back(std::move(blk));
    }
  std::sort(d.blocks.begin(), d.blocks.end());
  d.k_star = p;
  d.r_star = k_tilde;
  d.role = DesignRole{RoleKind::pbib, 0, 0, 1};
  auto rep = verify_pbib(d, s, 0, 1);
  if (!rep.ok) throw std::runtime_error("latin_square_pbib: " + rep.message);
  return d;
}

BlockDesign steiner_triple_bose(int g) {
  if (g < 4 || g % 3 != 1)
    throw std::invalid_argument(
        "steiner_triple_bose: replication must satisfy g >= 4, g = 1 (mod "
        "3), got " +
        std::to_string(g));
  const int h = (g - 1) / 3;
  const int m = 2 * h + 1;
  auto sym = [m](int zeta, int u) { return u * m + zeta; };
  BlockDesign d;
  d.v_star = 3 * m;
  for (int z = 0; z < m; ++z)
    d.blocks.push_back({sym(z, 0), sym(z, 1), sym(z, 2)});
  for (int x = 0; x < 3; ++x)
    for (int y = 1; y <= h; ++y)
      for (int z = 0; z < m; ++z) {
        std::vector<int> blk = {sym((z + y) % m, x),
                                sym(((z - y) % m + m) % m, x),
                                sym(z, (x + 1) % 3)};
        std::sort(blk.begin(), blk.end());
        d.blocks.push_back(std::move(blk));
      }
  std::sort(d.blocks.begin(), d.blocks.end());
  d.k_star = 3;
  d.r_star = g;
  d.role = DesignRole{RoleKind::bib, 1, 0, 0};
  auto rep = verify_bib(d, 1);
  if (!rep.ok) throw std::runtime_error("steiner_triple_bose: " + rep.message);
  return d;
}

BlockDesign steiner_triple_skolem(int g) {
  if (g < 3 || g % 3 != 0)
    throw std::invalid_argument(
        "steiner_triple_skolem: replication must satisfy g >= 3, g = 0 (mod "
        "3), got " +
        std::to_string(g));
  const int h = g / 3;
  const int v = 6 * h + 1;
  auto pairs = skolem_pairs(h);
  BlockDesign d;
  d.v_star = v;
  for (int r = 1; r <= h; ++r) {
    // base block {0, r, h + b_r} developed through all v translates
    const int third = h + pairs[static_cast<size_t>(r)].second;
    for (int t = 0; t < v; ++t) {
      std::vector<int> blk = {t, (r + t) % v, (third + t) % v};
      std::sort(blk.begin(), blk.end());
      d.blocks.push_back(std::move(blk));
    }
  }
  std::sort(d.blocks.begin(), d.blocks.end());
  d.k_star = 3;
  d.r_star = g;
  d.role = DesignRole{RoleKind::bib, 1, 0, 0};
  auto rep = verify_bib(d, 1);
  if (!rep.ok)
    throw std::runtime_error("steiner_triple_skolem: " + rep.message);
  return d;
}

BlockDesign transpose_design(const BlockDesign& d) {
  auto err = structural_error(d);
  if (!err.empty()) throw std::invalid_argument("transpose_design: " + err);
  BlockDesign t;
  t.v_star = static_cast<int>(d.blocks.size());
  t.blocks.resize(static_cast<size_t>(d.v_star));
  for (size_t j = 0; j < d.blocks.size(); ++j)
    for (int sym : d.blocks[j])
      t.blocks[static_cast<size_t>(sym)].push_back(static_cast<int>(j));
  t.k_star = d.r_star;
  t.r_star = d.k_star;
  return t;
}

DualDesign dual(const BlockDesign& d) {
  auto err = structural_error(d);
  if (!err.empty()) throw std::invalid_argument("dual: " + err);
  if (d.k_star < 2 || d.k_star >= d.v_star)
    throw std::invalid_argument("dual: block size must be in 2..v*-1, got " +
                                std::to_string(d.k_star));
  auto role = d.role ? d.role : classify_role(d);
  if (!role)
    throw std::invalid_argument(
        "dual: design is neither a BIB nor a (0,1)-concurrence PBIB");
  if (role->kind == RoleKind::bib && role->lambda != 1)
    throw std::invalid_argument("dual: BIB input must have lambda = 1, got " +
                                std::to_string(role->lambda));
  if (role->kind == RoleKind::pbib &&
      (role->lambda1 != 0 || role->lambda2 != 1))
    throw std::invalid_argument(
        "dual: PBIB input must have lambda1 = 0, lambda2 = 1");

  DualDesign dd;
  dd.base = transpose_design(d);
  dd.r_i = d.k_star;
  dd.k_i = d.r_star;
  derive_block_scheme(dd);
  return dd;
}

void derive_block_scheme(DualDesign& dd) {
  const int b = dd.b();
  if (b < 2)
    throw std::invalid_argument(
        "derive_block_scheme: need at least 2 blocks");
  const size_t bs = static_cast<size_t>(b);
  dd.block_assoc.assign(bs * bs, 0);

  // Pair pass: intersection sizes decide the class. Blocks are sorted, so
  // a two-pointer sweep counts shared symbols.
  for (int x = 0; x < b; ++x)
    for (int y = x + 1; y < b; ++y) {
      const auto& bx = dd.base.blocks[static_cast<size_t>(x)];
      const auto& by = dd.base.blocks[static_cast<size_t>(y)];
      int shared = 0;
      size_t i = 0, j = 0;
      while (i < bx.size() && j < by.size()) {
        if (bx[i] < by[j])
          ++i;
        else if (bx[i] > by[j])
          ++j;
        else {
          ++shared;
          ++i;
          ++j;
        }
      }
      if (shared > 1)
        throw std::runtime_error("derive_block_scheme: blocks " +
                                 std::to_string(x) + " and " +
                                 std::to_string(y) + " share " +
                                 std::to_string(shared) + " symbols");
      const std::uint8_t cls = shared == 0 ? 1 : 2;
      dd.block_assoc[static_cast<size_t>(x) * bs + y] = cls;
      dd.block_assoc[static_cast<size_t>(y) * bs + x] = cls;
    }

  // Associate counts must agree across blocks.
  dd.theta = {1, 0, 0};
  for (int x = 0; x < b; ++x) {
    std::int64_t c1 = 0, c2 = 0;
    const std::uint8_t* row = &dd.block_assoc[static_cast<size_t>(x) * bs];
    for (int y = 0; y < b; ++y) {
      if (row[y] == 1) ++c1;
      if (row[y] == 2) ++c2;
    }
    if (x == 0) {
      dd.theta[1] = c1;
      dd.theta[2] = c2;
    } else if (c1 != dd.theta[1] || c2 != dd.theta[2]) {
      throw std::runtime_error(
          "derive_block_scheme: block " + std::to_string(x) + " has (" +
          std::to_string(c1) + "," + std::to_string(c2) +
          ") associates, block 0 has (" + std::to_string(dd.theta[1]) + "," +
          std::to_string(dd.theta[2]) + ")");
    }
  }
  if (dd.theta[2] == 0)
    throw std::runtime_error(
        "derive_block_scheme: no block pair shares a symbol, so no key is "
        "ever shared");

  // Triple counts: tabulate the full 3x3 count matrix for the first pair of
  // each class, then demand every later pair of that class reproduces it.
  for (int j = 0; j < 3; ++j)
    for (int u = 0; u < 3; ++u)
      for (int w = 0; w < 3; ++w) dd.phi[j][u][w] = 0;
  dd.phi[0][0][0] = 1;
  dd.phi[0][1][1] = dd.theta[1];
  dd.phi[0][2][2] = dd.theta[2];
  for (int j = 1; j <= 2; ++j) {
    dd.phi[j][0][j] = 1;
    dd.phi[j][j][0] = 1;
  }
  bool seen[3] = {true, false, false};
  for (int x = 0; x < b; ++x) {
    const std::uint8_t* ax = &dd.block_assoc[static_cast<size_t>(x) * bs];
    for (int y = 0; y < b; ++y) {
      if (x == y) continue;
      const int cls = ax[y];
      const std::uint8_t* ay = &dd.block_assoc[static_cast<size_t>(y) * bs];
      std::int64_t cnt[3][3] = {};
      for (int z = 0; z < b; ++z) ++cnt[ax[z]][ay[z]];
      if (!seen[cls]) {
        for (int u = 0; u < 3; ++u)
          for (int w = 0; w < 3; ++w) dd.phi[cls][u][w] = cnt[u][w];
        seen[cls] = true;
        continue;
      }
      for (int u = 0; u < 3; ++u)
        for (int w = 0; w < 3; ++w)
          if (cnt[u][w] != dd.phi[cls][u][w])
            throw std::runtime_error(
                "derive_block_scheme: pair (" + std::to_string(x) + "," +
                std::to_string(y) + ") of class " + std::to_string(cls) +
                " counts " + std::to_string(cnt[u][w]) + " common (" +
                std::to_string(u) + "," + std::to_string(w) +
                ") associates, expected " +
                std::to_string(dd.phi[cls][u][w]));
    }
  }
  dd.in_Q = dd.theta[1] > 0;
}

}  // namespace kps
