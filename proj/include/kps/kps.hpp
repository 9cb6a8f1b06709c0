#pragma once

// Key predistribution scheme assembled from t dual designs with intersection
// threshold q = t. A node picks one block from each dual; its key ring is
// the disjoint union of those blocks, so there are n = b_1*...*b_t nodes
// holding k = k_1+...+k_t keys each out of a pool of v = v_1+...+v_t.
//
// Nodes stay virtual: a NodeId is the tuple of chosen block indices
// (0-based), and key rings are materialized on demand. Two distinct nodes
// relate through the tuple of block association classes of their choices,
// and every analytic quantity (n counts, p counts, shared-key counts, the
// qualifying set Delta and the helper counts mu) is a product or sum over
// the duals' theta and phi tables.

#include "kps/design.hpp"

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace kps {

using NodeId = std::vector<int>;      // alpha_i, one block index per dual
using AssocTuple = std::vector<int>;  // j_i in {0,1,2}, not all zero

// Keys across duals never collide: a key is a symbol of one constituent.
struct KeyId {
  int design = 0;
  int symbol = 0;
  auto operator<=>(const KeyId&) const = default;
};

struct Kps {
  std::vector<DualDesign> duals;
  int q = 0;             // intersection threshold, always equal to t
  std::int64_t n = 0;    // node count, product of the b_i
  std::int64_t k = 0;    // keys per node, sum of the k_i
  std::int64_t v = 0;    // key-pool size, sum of the v_i

  int t() const { return static_cast<int>(duals.size()); }
};

// Validates arity (q = number of duals) and that every dual block holds at
// least q symbols, then fills in the derived sizes.
Kps build(std::vector<DualDesign> duals, int q);

// Key ring of a node, sorted by (design, symbol); always exactly k keys.
std::vector<KeyId> node_keys(const Kps& kps, const NodeId& node);

// Component-wise association classes of two distinct nodes.
AssocTuple assoc_tuple(const Kps& kps, const NodeId& a, const NodeId& b);

// Tuples (j_1..j_t) with j_i in {0,1,2}, restricted to {0,2} for duals
// without first associates, excluding the all-zero tuple; lexicographic.
std::vector<AssocTuple> index_set(const Kps& kps);

// Number of nodes that stand in relation t to a fixed node: product of
// theta_{j_i}(i). Summed over the whole index set this gives n-1.
std::int64_t n_count(const Kps& kps, const AssocTuple& t);

// Number of nodes that are u-related to one node and w-related to another
// j-related node: product of phi^{j_i}_{u_i,w_i}(i).
std::int64_t p_count(const Kps& kps, const AssocTuple& j, const AssocTuple& u,
                     const AssocTuple& w);

// Shared-key count of any pair in relation t: component i contributes k_i
// when j_i = 0 (same block), 1 when j_i = 2, nothing when j_i = 1.
std::int64_t lambda_count(const Kps& kps, const AssocTuple& t);

struct DeltaSets {
  std::vector<AssocTuple> delta;      // lambda >= q: direct secure link
  std::vector<AssocTuple> delta_bar;  // the rest
};

// Splits the index set by the threshold and cross-checks the split against
// its combinatorial characterization (some j_i = 0, or all j_i = 2).
DeltaSets delta_set(const Kps& kps);

// For a tuple outside Delta: how many third nodes share at least q keys
// with both members of such a pair. Double sum of p counts over Delta.
std::int64_t mu(const Kps& kps, const AssocTuple& t);

// Nodes enumerate as mixed-radix integers, alpha_1 most significant.
NodeId node_from_index(const Kps& kps, std::int64_t index);
std::int64_t node_index(const Kps& kps, const NodeId& node);

// Compact digit form used in reports, e.g. (1,2) -> "12".
std::string tuple_label(const AssocTuple& t);

}  // namespace kps
