#pragma once

// Two-class association schemes on v* symbols. A scheme classifies every
// unordered pair of distinct symbols as 1st or 2nd associates so that
//   theta[j]     = number of j-th associates of any symbol (constant),
//   phi[j][u][w] = for any pair of j-th associates (x, y), the number of
//                  symbols z with assoc(x,z) = u and assoc(y,z) = w
//                  (constant over all such pairs).
// Class 0 is reserved for a symbol paired with itself, which forces
//   theta[0] = 1, phi[0] diagonal, phi[j][0][w] = [w == j],
//   phi[j][u][0] = [u == j].
//
// Symbol indices are canonical integers 0..v*-1 with these bijections:
//   group divisible: symbol (i, j), 1 <= i <= a, 1 <= j <= f, index (i-1)f + (j-1)
//   triangular:      pair {i, j}, 1 <= i < j <= m, lexicographic rank
//   latin square:    grid cell (r, c), 1-based, index (r-1)p + (c-1)

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace kps {

struct AssociationScheme {
  enum class Family { group_divisible, triangular, latin_square };

  Family family = Family::group_divisible;
  int v_star = 0;
  std::vector<std::string> labels;          // display label per symbol index
  std::array<std::int64_t, 3> theta{};      // theta[j]
  std::int64_t phi[3][3][3] = {};           // phi[j][u][w]
  std::vector<std::uint8_t> assoc_table;    // v* x v*, row-major

  int assoc(int x, int y) const {
    return assoc_table[static_cast<size_t>(x) * v_star + y];
  }
};

// square[row][col], entries 0..p-1.
using LatinSquare = std::vector<std::vector<int>>;

// a groups of f symbols each; same-group pairs are 1st associates.
AssociationScheme gd_scheme(int a, int f);

// Symbols are the 2-subsets of {1..m}; pairs sharing an element are 1st
// associates.
AssociationScheme triangular_scheme(int m);

// p x p grid with k_tilde - 2 mutually orthogonal Latin squares. Cells
// sharing a row, a column, or a letter of any square are 2nd associates.
// The squares are validated exhaustively (Latin property and pairwise
// orthogonality) and rejected if invalid.
AssociationScheme latin_square_scheme(int p, int k_tilde,
                                      const std::vector<LatinSquare>& mols);

// Cyclic squares L_c(i, j) = c*i + j mod p for c = 1..count. Pairwise
// orthogonal when p is prime; composite p is rejected.
std::vector<LatinSquare> cyclic_mols(int p, int count);

struct ValidationReport {
  bool ok = true;
  std::string message;
};

// Recomputes theta and phi by exhaustive counting over assoc and compares
// them to the stored tables, reporting the first mismatch.
ValidationReport validate_scheme(const AssociationScheme& s);

}  // namespace kps
