#pragma once

// Label-based shared-key discovery for the two-design family built from a
// group-divisible pairing design and a Steiner triple system with
// replication g = 3h+1. Nodes carry a compact label (beta, gamma, zeta, u)
// and every key has a closed-form label, so two nodes can work out their
// common keys from four broadcast scalars instead of exchanging key lists.
//
// Key labels:
//   GdBlock(beta, beta2, gamma, delta)  pairing block of the symbols
//                                       (beta,gamma) and (beta2,delta),
//                                       normalized to beta < beta2
//   StsTriple(x, y, z)                  the triple {(z+y)_x, (z-y)_x, z_{x+1}}
//   StsBase(z)                          the triple {z_0, z_1, z_2}

#include "kps/kps.hpp"

#include <compare>
#include <map>
#include <string>
#include <vector>

namespace kps {

struct GdStsParams {
  int a = 0;  // number of groups
  int f = 0;  // group size
  int g = 0;  // triple-system replication, g = 3h+1

  int h() const { return (g - 1) / 3; }
  int m() const { return 2 * h() + 1; }  // residues per class
};

// Validates a >= 2, f >= 2, g = 3h+1 with h >= 1.
GdStsParams gd_sts_params(int a, int f, int g);

struct GdNodePart {
  int beta = 0;   // group, 1..a
  int gamma = 0;  // position, 1..f
  auto operator<=>(const GdNodePart&) const = default;
};

struct StsNodePart {
  int zeta = 0;  // residue, 0..2h
  int u = 0;     // class, 0..2
  auto operator<=>(const StsNodePart&) const = default;
};

struct NodeLabel {
  GdNodePart gd;
  StsNodePart sts;
  auto operator<=>(const NodeLabel&) const = default;
};

struct KeyLabel {
  enum class Kind { gd_block, sts_triple, sts_base };
  Kind kind = Kind::gd_block;
  int beta = 0, beta2 = 0, gamma = 0, delta = 0;  // gd_block fields
  int x = 0, y = 0, z = 0;                        // sts fields
  auto operator<=>(const KeyLabel&) const = default;
};

// The unique pairing-design key of two symbols from different groups.
KeyLabel l1(const GdStsParams& p, const GdNodePart& bg, const GdNodePart& bd);

// Every pairing-design key on a symbol; (a-1)f labels.
std::vector<KeyLabel> v1(const GdStsParams& p, const GdNodePart& bg);

// The unique triple-system key of two distinct symbols.
KeyLabel l2(const GdStsParams& p, const StsNodePart& zu,
            const StsNodePart& zw);

// Every triple-system key on a symbol; g labels.
std::vector<KeyLabel> v2(const GdStsParams& p, const StsNodePart& zu);

// Shared keys of two distinct nodes from their labels alone, sorted.
std::vector<KeyLabel> discover(const GdStsParams& p, const NodeLabel& a,
                               const NodeLabel& b);

std::string to_string(const KeyLabel& label);
std::string to_string(const NodeLabel& label);

// Parses "beta:gamma:zeta:u".
NodeLabel parse_node_label(const std::string& text);

// Concrete KPS for the family plus the label<->index bijections, letting
// the label algebra be checked against raw key-ring intersections.
class GdStsLabeling {
 public:
  GdStsLabeling(int a, int f, int g);

  const GdStsParams& params() const { return params_; }
  const Kps& kps() const { return kps_; }

  NodeId node_id(const NodeLabel& label) const;
  NodeLabel node_label(const NodeId& node) const;
  KeyId key_id(const KeyLabel& label) const;
  KeyLabel key_label(const KeyId& key) const;

 private:
  GdStsParams params_;
  Kps kps_;
  std::vector<KeyLabel> labels_by_symbol_[2];
  std::map<KeyLabel, KeyId> ids_by_label_;
};

}  // namespace kps
