#include "kps/scheme.hpp"

#include <sstream>
#include <stdexcept>

namespace kps {

namespace {

std::int64_t choose2(std::int64_t x) { return x < 2 ? 0 : x * (x - 1) / 2; }

// Cells forced by the class-0 conventions; identical for every two-class
// scheme, so the family constructors only fill the inner j,u,w in {1,2}
// entries.
void fill_forced_phi(AssociationScheme& s) {
  for (int u = 0; u < 3; ++u) s.phi[0][u][u] = s.theta[u];
  for (int j = 1; j <= 2; ++j) {
    for (int w = 0; w < 3; ++w) s.phi[j][0][w] = (w == j) ? 1 : 0;
    for (int u = 0; u < 3; ++u) s.phi[j][u][0] = (u == j) ? 1 : 0;
  }
}

bool is_latin(const LatinSquare& sq, int p) {
  if (static_cast<int>(sq.size()) != p) return false;
  for (const auto& row : sq)
    if (static_cast<int>(row.size()) != p) return false;
  std::vector<bool> seen(static_cast<size_t>(p));
  for (int r = 0; r < p; ++r) {
    std::fill(seen.begin(), seen.end(), false);
    for (int c = 0; c < p; ++c) {
      int e = sq[r][c];
      if (e < 0 || e >= p || seen[e]) return false;
      seen[e] = true;
    }
  }
  for (int c = 0; c < p; ++c) {
    std::fill(seen.begin(), seen.end(), false);
    for (int r = 0; r < p; ++r) {
      int e = sq[r][c];
      if (seen[e]) return false;
      seen[e] = true;
    }
  }
  return true;
}

bool are_orthogonal(const LatinSquare& a, const LatinSquare& b, int p) {
  std::vector<bool> seen(static_cast<size_t>(p) * p, false);
  for (int r = 0; r < p; ++r)
    for (int c = 0; c < p; ++c) {
      int idx = a[r][c] * p + b[r][c];
      if (seen[idx]) return false;
      seen[idx] = true;
    }
  return true;
}

}  // namespace

AssociationScheme gd_scheme(int a, int f) {
  if (a < 2) throw std::invalid_argument("gd_scheme: need at least 2 groups");
  if (f < 2) throw std::invalid_argument("gd_scheme: need group size at least 2");

  AssociationScheme s;
  s.family = AssociationScheme::Family::group_divisible;
  s.v_star = a * f;
  s.labels.reserve(static_cast<size_t>(s.v_star));
  for (int i = 1; i <= a; ++i)
    for (int j = 1; j <= f; ++j)
      s.labels.push_back(std::to_string(i) + "." + std::to_string(j));

  s.assoc_table.assign(static_cast<size_t>(s.v_star) * s.v_star, 2);
  for (int x = 0; x < s.v_star; ++x)
    for (int y = 0; y < s.v_star; ++y) {
      if (x == y)
        s.assoc_table[static_cast<size_t>(x) * s.v_star + y] = 0;
      else if (x / f == y / f)
        s.assoc_table[static_cast<size_t>(x) * s.v_star + y] = 1;
    }

  s.theta = {1, f - 1, static_cast<std::int64_t>(f) * (a - 1)};
  fill_forced_phi(s);
  s.phi[1][1][1] = f - 2;
  s.phi[1][2][2] = static_cast<std::int64_t>(f) * (a - 1);
  s.phi[2][1][2] = s.phi[2][2][1] = f - 1;
  s.phi[2][2][2] = static_cast<std::int64_t>(f) * (a - 2);
  return s;
}

AssociationScheme triangular_scheme(int m) {
  if (m < 4) throw std::invalid_argument("triangular_scheme: need m >= 4");

  AssociationScheme s;
  s.family = AssociationScheme::Family::triangular;
  s.v_star = m * (m - 1) / 2;

  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(static_cast<size_t>(s.v_star));
  for (int i = 1; i <= m; ++i)
    for (int j = i + 1; j <= m; ++j) {
      pairs.emplace_back(i, j);
      s.labels.push_back(std::to_string(i) + "." + std::to_string(j));
    }

  s.assoc_table.assign(static_cast<size_t>(s.v_star) * s.v_star, 2);
  for (int x = 0; x < s.v_star; ++x)
    for (int y = 0; y < s.v_star; ++y) {
      if (x == y) {
        s.assoc_table[static_cast<size_t>(x) * s.v_star + y] = 0;
        continue;
      }
      auto [a, b] = pairs[x];
      auto [c, d] = pairs[y];
      if (a == c || a == d || b == c || b == d)
        s.assoc_table[static_cast<size_t>(x) * s.v_star + y] = 1;
    }

  s.theta = {1, 2 * (m - 2), choose2(m - 2)};
  fill_forced_phi(s);
  s.phi[1][1][1] = m - 2;
  s.phi[1][1][2] = s.phi[1][2][1] = m - 3;
  s.phi[1][2][2] = choose2(m - 3);
  s.phi[2][1][1] = 4;
  s.phi[2][1][2] = s.phi[2][2][1] = 2 * m - 8;
  s.phi[2][2][2] = choose2(m - 4);
  return s;
}

AssociationScheme latin_square_scheme(int p, int k_tilde,
                                      const std::vector<LatinSquare>& mols) {
  if (p < 3) throw std::invalid_argument("latin_square_scheme: need p >= 3");
  if (k_tilde < 2 || k_tilde > p)
    throw std::invalid_argument("latin_square_scheme: need 2 <= k <= p");
  if (static_cast<int>(mols.size()) != k_tilde - 2)
    throw std::invalid_argument("latin_square_scheme: expected " +
                                std::to_string(k_tilde - 2) + " squares, got " +
                                std::to_string(mols.size()));
  for (size_t i = 0; i < mols.size(); ++i)
    if (!is_latin(mols[i], p))
      throw std::invalid_argument("latin_square_scheme: square " +
                                  std::to_string(i + 1) + " is not a Latin square of order " +
                                  std::to_string(p));
  for (size_t i = 0; i < mols.size(); ++i)
    for (size_t j = i + 1; j < mols.size(); ++j)
      if (!are_orthogonal(mols[i], mols[j], p))
        throw std::invalid_argument("latin_square_scheme: squares " +
                                    std::to_string(i + 1) + " and " +
                                    std::to_string(j + 1) + " are not orthogonal");

  AssociationScheme s;
  s.family = AssociationScheme::Family::latin_square;
  s.v_star = p * p;
  for (int r = 1; r <= p; ++r)
    for (int c = 1; c <= p; ++c)
      s.labels.push_back(std::to_string(r) + "." + std::to_string(c));

  s.assoc_table.assign(static_cast<size_t>(s.v_star) * s.v_star, 1);
  for (int x = 0; x < s.v_star; ++x) {
    int rx = x / p, cx = x % p;
    for (int y = 0; y < s.v_star; ++y) {
      if (x == y) {
        s.assoc_table[static_cast<size_t>(x) * s.v_star + y] = 0;
        continue;
      }
      int ry = y / p, cy = y % p;
      bool shares = rx == ry || cx == cy;
      for (size_t q = 0; !shares && q < mols.size(); ++q)
        shares = mols[q][rx][cx] == mols[q][ry][cy];
      if (shares) s.assoc_table[static_cast<size_t>(x) * s.v_star + y] = 2;
    }
  }

  std::int64_t pk = p - k_tilde;
  s.theta = {1, static_cast<std::int64_t>(p - 1) * (pk + 1),
             static_cast<std::int64_t>(k_tilde) * (p - 1)};
  fill_forced_phi(s);
  s.phi[1][1][1] = pk * (pk - 1) + p - 2;
  s.phi[1][1][2] = s.phi[1][2][1] = static_cast<std::int64_t>(k_tilde) * pk;
  s.phi[1][2][2] = static_cast<std::int64_t>(k_tilde) * (k_tilde - 1);
  s.phi[2][1][1] = pk * (pk + 1);
  s.phi[2][1][2] = s.phi[2][2][1] = static_cast<std::int64_t>(k_tilde - 1) * (pk + 1);
  s.phi[2][2][2] = static_cast<std::int64_t>(k_tilde - 1) * (k_tilde - 2) + p - 2;
  return s;
}

std::vector<LatinSquare> cyclic_mols(int p, int count) {
  if (p < 2) throw std::invalid_argument("cyclic_mols: need p >= 2");
  for (int d = 2; static_cast<std::int64_t>(d) * d <= p; ++d)
    if (p % d == 0)
      throw std::invalid_argument("cyclic_mols: " + std::to_string(p) +
                                  " is not prime; supply squares explicitly");
  if (count < 0 || count > p - 1)
    throw std::invalid_argument("cyclic_mols: count must be in 0.." +
                                std::to_string(p - 1));

  std::vector<LatinSquare> squares;
  squares.reserve(static_cast<size_t>(count));
  for (int c = 1; c <= count; ++c) {
    LatinSquare sq(static_cast<size_t>(p), std::vector<int>(static_cast<size_t>(p)));
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < p; ++j)
        sq[i][j] = (c * i + j) % p;
    squares.push_back(std::move(sq));
  }
  return squares;
}

ValidationReport validate_scheme(const AssociationScheme& s) {
  auto fail = [](std::string msg) { return ValidationReport{false, std::move(msg)}; };
  int v = s.v_star;
  if (v < 2) return fail("fewer than 2 symbols");
  if (s.assoc_table.size() != static_cast<size_t>(v) * v)
    return fail("association table has wrong size");
  if (s.theta[0] != 1) return fail("theta[0] must be 1");
  if (s.theta[1] + s.theta[2] != v - 1)
    return fail("theta[1] + theta[2] must equal v* - 1");

  for (int x = 0; x < v; ++x) {
    if (s.assoc(x, x) != 0)
      return fail("assoc(" + std::to_string(x) + ", itself) is not 0");
    std::int64_t cnt[3] = {1, 0, 0};
    for (int y = 0; y < v; ++y) {
      if (y == x) continue;
      int j = s.assoc(x, y);
      if (j < 1 || j > 2)
        return fail("assoc class out of range at pair (" + std::to_string(x) +
                    ", " + std::to_string(y) + ")");
      if (s.assoc(y, x) != j)
        return fail("association is not symmetric at pair (" + std::to_string(x) +
                    ", " + std::to_string(y) + ")");
      ++cnt[j];
    }
    for (int j = 0; j < 3; ++j)
      if (cnt[j] != s.theta[j])
        return fail("theta[" + std::to_string(j) + "] mismatch at symbol " +
                    std::to_string(x) + ": stored " + std::to_string(s.theta[j]) +
                    ", counted " + std::to_string(cnt[j]));
  }

  // phi[0] is pinned to the diagonal theta values by definition.
  for (int u = 0; u < 3; ++u)
    for (int w = 0; w < 3; ++w) {
      std::int64_t expect = (u == w) ? s.theta[u] : 0;
      if (s.phi[0][u][w] != expect)
        return fail("phi[0][" + std::to_string(u) + "][" + std::to_string(w) +
                    "] must be " + std::to_string(expect));
    }

  for (int x = 0; x < v; ++x)
    for (int y = 0; y < v; ++y) {
      if (x == y) continue;
      int j = s.assoc(x, y);
      std::int64_t cnt[3][3] = {};
      for (int z = 0; z < v; ++z) ++cnt[s.assoc(x, z)][s.assoc(y, z)];
      for (int u = 0; u < 3; ++u)
        for (int w = 0; w < 3; ++w)
          if (cnt[u][w] != s.phi[j][u][w]) {
            std::ostringstream os;
            os << "phi[" << j << "][" << u << "][" << w << "] mismatch at pair ("
               << x << ", " << y << "): stored " << s.phi[j][u][w] << ", counted "
               << cnt[u][w];
            return fail(os.str());
          }
    }

  return {};
}

}  // namespace kps
