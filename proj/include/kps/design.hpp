#pragma once

// Block designs and their duals.
//
// A design arranges v* symbols (0..v*-1) into b* blocks, every block the
// same size k* and every symbol replicated r* times. Two roles feed the
// key predistribution construction:
//   BIB(lambda = 1):       every pair of distinct symbols co-occurs once;
//   PBIB(lambda1 = 0, lambda2 = 1): 1st-associate pairs never co-occur,
//                          2nd-associate pairs co-occur once.
//
// The dual swaps symbols and blocks: block i of the dual lists the blocks
// of the primal that contain symbol i, so dual block order follows the
// primal symbol order, dual symbol order follows the primal block order,
// and taking the dual twice restores the original design exactly. Block
// contents are kept sorted. Generated designs (pairing, Latin square,
// Steiner triple) emit their block lists in lexicographic order; designs
// loaded from explicit block lists keep the caller's order so external
// block numbering survives the round trip.
//
// Distinct blocks of a usable dual share at most one symbol. Disjoint
// block pairs are 1st associates, pairs sharing one symbol 2nd associates,
// and derive_block_scheme checks that the induced theta and phi counts are
// constant, which is what the product formulas downstream rely on.

#include "kps/scheme.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace kps {

enum class RoleKind { bib, pbib };

struct DesignRole {
  RoleKind kind = RoleKind::bib;
  std::int64_t lambda = 0;               // BIB concurrence
  std::int64_t lambda1 = 0, lambda2 = 0; // PBIB concurrences
};

struct BlockDesign {
  int v_star = 0;
  std::vector<std::vector<int>> blocks;  // each block strictly increasing
  int k_star = 0;
  int r_star = 0;
  std::optional<DesignRole> role;
};

struct VerifyReport {
  bool ok = true;
  std::string message;
};

// Exhaustive checks of the defining conditions; the report names the first
// violation found.
VerifyReport verify_bib(const BlockDesign& d, std::int64_t lambda);
VerifyReport verify_pbib(const BlockDesign& d, const AssociationScheme& s,
                         std::int64_t lambda1, std::int64_t lambda2);

// Structural classification used for explicit designs: BIB(lambda) when the
// pair concurrence is constant, PBIB(0, 1) shape when it is 0/1 valued.
// Returns nullopt when the design fits neither role.
std::optional<DesignRole> classify_role(const BlockDesign& d);

// One block {x, y} per unordered 2nd-associate pair of the scheme. Verifies
// as PBIB(0, 1) with k* = 2 and r* = theta[2].
BlockDesign pbib_second_associates(const AssociationScheme& s);

// Blocks are the p rows, p columns and the p letter classes of each of the
// k_tilde - 2 squares. Verifies as PBIB(0, 1) over latin_square_scheme.
BlockDesign latin_square_pbib(int p, int k_tilde,
                              const std::vector<LatinSquare>& mols);

// Steiner triple system on 2g+1 symbols for g = 3h + 1: symbols are
// residues 0..2h in three classes, with blocks
//   { (z+y)_x, (z-y)_x, z_{x+1} }  for x in {0,1,2}, y in 1..h, z in 0..2h
// (subscripts mod 3, elements mod 2h+1) plus the base triples {z_0,z_1,z_2}.
// Symbol zeta in class u has index u*(2h+1) + zeta.
BlockDesign steiner_triple_bose(int g);

// Steiner triple system on 2g+1 symbols for g = 3h: base blocks
// {0, r, h + b_r} mod 6h+1 from a Skolem or hooked Skolem pairing found by
// backtracking. The output is accepted only after an exhaustive lambda = 1
// verification; a failed search or verification raises an error instead of
// emitting an unverified design.
BlockDesign steiner_triple_skolem(int g);

struct DualDesign {
  BlockDesign base;                       // v_i symbols, b_i blocks
  int r_i = 0;                            // dual replication  (= primal k*)
  int k_i = 0;                            // dual block size   (= primal r*)
  std::array<std::int64_t, 3> theta{};    // block-level theta_j(i)
  std::int64_t phi[3][3][3] = {};         // block-level phi^j_{u,w}(i)
  bool in_Q = false;                      // theta[1] > 0
  std::vector<std::uint8_t> block_assoc;  // b_i x b_i association classes

  int b() const { return static_cast<int>(base.blocks.size()); }
  int v() const { return base.v_star; }
  int assoc(int x, int y) const {
    return block_assoc[static_cast<size_t>(x) * base.blocks.size() + y];
  }
};

// Pure incidence transpose: block i of the result lists the blocks of d
// containing symbol i, in block order. No role is assigned and no block
// scheme is derived; applying it twice restores the design exactly.
BlockDesign transpose_design(const BlockDesign& d);

// Transposes the incidence of a verified BIB(1) or PBIB(0, 1) design and
// derives the block-level association parameters. Rejects inputs whose dual
// would contain two blocks sharing 2 or more symbols.
DualDesign dual(const BlockDesign& d);

// Classifies every pair of dual blocks, then fills theta, phi and the
// association table, raising std::runtime_error (naming the offending pair)
// if any count fails to be constant.
void derive_block_scheme(DualDesign& dd);

}  // namespace kps
