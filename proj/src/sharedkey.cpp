// Shared-key discovery from node labels, plus the bijections tying the
// label algebra to a concrete KPS instance.

#include "kps/sharedkey.hpp"

#include "kps/scheme.hpp"

#include <algorithm>
#include <stdexcept>

namespace kps {

namespace {

void check_gd(const GdStsParams& p, const GdNodePart& s, const char* what) {
  if (s.beta < 1 || s.beta > p.a || s.gamma < 1 || s.gamma > p.f)
    throw std::invalid_argument(std::string(what) + ": symbol (" +
                                std::to_string(s.beta) + "," +
                                std::to_string(s.gamma) +
                                ") outside the group-divisible ranges");
}

void check_sts(const GdStsParams& p, const StsNodePart& s, const char* what) {
  if (s.zeta < 0 || s.zeta >= p.m() || s.u < 0 || s.u > 2)
    throw std::invalid_argument(std::string(what) + ": symbol " +
                                std::to_string(s.zeta) + "_" +
                                std::to_string(s.u) +
                                " outside the triple-system ranges");
}

// Difference folded into 1..h, picking whichever of +-d is in range.
int fold_difference(const GdStsParams& p, int d) {
  const int m = p.m();
  int y = ((d % m) + m) % m;
  if (y > p.h()) y = m - y;
  return y;
}

KeyLabel triple(int x, int y, int z) {
  KeyLabel k;
  k.kind = KeyLabel::Kind::sts_triple;
  k.x = x;
  k.y = y;
  k.z = z;
  return k;
}

KeyLabel base(int z) {
  KeyLabel k;
  k.kind = KeyLabel::Kind::sts_base;
  k.z = z;
  return k;
}

// Sorted symbol indices of the block a label denotes, in the conventions of
// the underlying constructions (group-major for the pairing design, class
// times m plus residue for the triple system).
std::vector<int> label_content(const GdStsParams& p, const KeyLabel& k) {
  const int m = p.m();
  std::vector<int> content;
  switch (k.kind) {
    case KeyLabel::Kind::gd_block:
      content = {(k.beta - 1) * p.f + (k.gamma - 1),
                 (k.beta2 - 1) * p.f + (k.delta - 1)};
      break;
    case KeyLabel::Kind::sts_triple:
      content = {k.x * m + (k.z + k.y) % m, k.x * m + ((k.z - k.y) % m + m) % m,
                 ((k.x + 1) % 3) * m + k.z};
      break;
    case KeyLabel::Kind::sts_base:
      content = {k.z, m + k.z, 2 * m + k.z};
      break;
  }
  std::sort(content.begin(), content.end());
  return content;
}

}  // namespace

GdStsParams gd_sts_params(int a, int f, int g) {
  if (a < 2 || f < 2)
    throw std::invalid_argument(
        "gd_sts_params: need at least 2 groups of size at least 2");
  if (g < 4 || g % 3 != 1)
    throw std::invalid_argument(
        "gd_sts_params: labeling needs replication g = 3h+1, h >= 1, got " +
        std::to_string(g));
  return GdStsParams{a, f, g};
}

KeyLabel l1(const GdStsParams& p, const GdNodePart& bg, const GdNodePart& bd) {
  check_gd(p, bg, "l1");
  check_gd(p, bd, "l1");
  if (bg.beta == bd.beta)
    throw std::invalid_argument(
        "l1: symbols of the same group never share a pairing key");
  KeyLabel k;
  k.kind = KeyLabel::Kind::gd_block;
  if (bg.beta < bd.beta) {
    k.beta = bg.beta;
    k.gamma = bg.gamma;
    k.beta2 = bd.beta;
    k.delta = bd.gamma;
  } else {
    k.beta = bd.beta;
    k.gamma = bd.gamma;
    k.beta2 = bg.beta;
    k.delta = bg.gamma;
  }
  return k;
}

std::vector<KeyLabel> v1(const GdStsParams& p, const GdNodePart& bg) {
  check_gd(p, bg, "v1");
  std::vector<KeyLabel> out;
  out.reserve(static_cast<size_t>(p.a - 1) * p.f);
  for (int beta = 1; beta <= p.a; ++beta) {
    if (beta == bg.beta) continue;
    for (int pos = 1; pos <= p.f; ++pos)
      out.push_back(l1(p, bg, GdNodePart{beta, pos}));
  }
  std::sort(out.begin(), out.end());
  return out;
}

KeyLabel l2(const GdStsParams& p, const StsNodePart& zu,
            const StsNodePart& zw) {
  check_sts(p, zu, "l2");
  check_sts(p, zw, "l2");
  if (zu == zw)
    throw std::invalid_argument("l2: symbols must be distinct");
  const int m = p.m();
  if (zu.zeta == zw.zeta) return base(zu.zeta);
  if (zu.u == zw.u) {
    // Same class: both sit in the +-y slots of one triple, whose midpoint
    // and half-difference come from the inverse of 2 mod m.
    const int inv2 = (m + 1) / 2;
    const int z =
        static_cast<int>((static_cast<long long>(zu.zeta + zw.zeta) * inv2) %
                         m);
    const int y = fold_difference(
        p, static_cast<int>(
               (static_cast<long long>(((zu.zeta - zw.zeta) % m + m) % m) *
                inv2) %
               m));
    return triple(zu.u, y, z);
  }
  // Different class and residue: one symbol fills the carry slot z_{x+1},
  // the other a +-y slot of class x.
  if (zw.u == (zu.u + 1) % 3)
    return triple(zu.u, fold_difference(p, zu.zeta - zw.zeta), zw.zeta);
  return triple(zw.u, fold_difference(p, zw.zeta - zu.zeta), zu.zeta);
}

std::vector<KeyLabel> v2(const GdStsParams& p, const StsNodePart& zu) {
  check_sts(p, zu, "v2");
  const int m = p.m();
  std::vector<KeyLabel> out;
  out.reserve(static_cast<size_t>(p.g));
  for (int y = 1; y <= p.h(); ++y) {
    out.push_back(triple(zu.u, y, (zu.zeta + y) % m));
    out.push_back(triple(zu.u, y, ((zu.zeta - y) % m + m) % m));
    out.push_back(triple((zu.u + 2) % 3, y, zu.zeta));
  }
  out.push_back(base(zu.zeta));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<KeyLabel> discover(const GdStsParams& p, const NodeLabel& a,
                               const NodeLabel& b) {
  check_gd(p, a.gd, "discover");
  check_gd(p, b.gd, "discover");
  check_sts(p, a.sts, "discover");
  check_sts(p, b.sts, "discover");
  if (a == b) throw std::invalid_argument("discover: nodes must be distinct");

  std::vector<KeyLabel> out;
  if (a.gd == b.gd) {
    // Same pairing symbol: the whole pairing neighborhood is shared, plus
    // the one triple-system key of the differing symbols.
    out = v1(p, a.gd);
    out.push_back(l2(p, a.sts, b.sts));
  } else if (a.sts == b.sts) {
    if (a.gd.beta != b.gd.beta) out.push_back(l1(p, a.gd, b.gd));
    const auto sts = v2(p, a.sts);
    out.insert(out.end(), sts.begin(), sts.end());
  } else {
    if (a.gd.beta != b.gd.beta) out.push_back(l1(p, a.gd, b.gd));
    out.push_back(l2(p, a.sts, b.sts));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string to_string(const KeyLabel& label) {
  switch (label.kind) {
    case KeyLabel::Kind::gd_block:
      return "block:" + std::to_string(label.beta) + ":" +
             std::to_string(label.beta2) + ":" + std::to_string(label.gamma) +
             ":" + std::to_string(label.delta);
    case KeyLabel::Kind::sts_triple:
      return "triple:" + std::to_string(label.x) + ":" +
             std::to_string(label.y) + ":" + std::to_string(label.z);
    case KeyLabel::Kind::sts_base:
      return "base:" + std::to_string(label.z);
  }
  return "";
}

std::string to_string(const NodeLabel& label) {
  return std::to_string(label.gd.beta) + ":" + std::to_string(label.gd.gamma) +
         ":" + std::to_string(label.sts.zeta) + ":" +
         std::to_string(label.sts.u);
}

NodeLabel parse_node_label(const std::string& text) {
  int parts[4] = {};
  size_t start = 0;
  for (int i = 0; i < 4; ++i) {
    const size_t end = i == 3 ? text.size() : text.find(':', start);
    if (end == std::string::npos)
      throw std::invalid_argument(
          "parse_node_label: expected beta:gamma:zeta:u, got '" + text + "'");
    const std::string piece = text.substr(start, end - start);
    try {
      size_t used = 0;
      parts[i] = std::stoi(piece, &used);
      if (used != piece.size() || piece.empty()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw std::invalid_argument("parse_node_label: '" + piece +
                                  "' is not an integer in '" + text + "'");
    }
    start = end + 1;
  }
  NodeLabel label;
  label.gd = {parts[0], parts[1]};
  label.sts = {parts[2], parts[3]};
  return label;
}

GdStsLabeling::GdStsLabeling(int a, int f, int g)
    : params_(gd_sts_params(a, f, g)) {
  const BlockDesign pairing = pbib_second_associates(gd_scheme(a, f));
  const BlockDesign triples = steiner_triple_bose(g);
  std::map<std::vector<int>, int> index_of[2];
  for (size_t i = 0; i < pairing.blocks.size(); ++i)
    index_of[0][pairing.blocks[i]] = static_cast<int>(i);
  for (size_t i = 0; i < triples.blocks.size(); ++i)
    index_of[1][triples.blocks[i]] = static_cast<int>(i);

  // Enumerate every label, locate its block, and record both directions.
  // The loops must exhaust the blocks exactly once each; anything else
  // means the label algebra and the construction disagree.
  std::vector<KeyLabel> all;
  for (int beta = 1; beta < a; ++beta)
    for (int beta2 = beta + 1; beta2 <= a; ++beta2)
      for (int gamma = 1; gamma <= f; ++gamma)
        for (int delta = 1; delta <= f; ++delta) {
          KeyLabel k;
          k.kind = KeyLabel::Kind::gd_block;
          k.beta = beta;
          k.beta2 = beta2;
          k.gamma = gamma;
          k.delta = delta;
          all.push_back(k);
        }
  for (int x = 0; x < 3; ++x)
    for (int y = 1; y <= params_.h(); ++y)
      for (int z = 0; z < params_.m(); ++z) all.push_back(triple(x, y, z));
  for (int z = 0; z < params_.m(); ++z) all.push_back(base(z));

  labels_by_symbol_[0].resize(pairing.blocks.size());
  labels_by_symbol_[1].resize(triples.blocks.size());
  for (const KeyLabel& k : all) {
    const int design = k.kind == KeyLabel::Kind::gd_block ? 0 : 1;
    const auto content = label_content(params_, k);
    const auto it = index_of[design].find(content);
    if (it == index_of[design].end())
      throw std::logic_error("GdStsLabeling: label " + to_string(k) +
                             " denotes no block of design " +
                             std::to_string(design + 1));
    labels_by_symbol_[design][static_cast<size_t>(it->second)] = k;
    if (!ids_by_label_.emplace(k, KeyId{design, it->second}).second)
      throw std::logic_error("GdStsLabeling: duplicate label " + to_string(k));
  }
  if (ids_by_label_.size() !=
      pairing.blocks.size() + triples.blocks.size())
    throw std::logic_error("GdStsLabeling: labels do not cover the key pool");

  std::vector<DualDesign> duals;
  duals.push_back(dual(pairing));
  duals.push_back(dual(triples));
  kps_ = build(std::move(duals), 2);
}

NodeId GdStsLabeling::node_id(const NodeLabel& label) const {
  check_gd(params_, label.gd, "node_id");
  check_sts(params_, label.sts, "node_id");
  return {(label.gd.beta - 1) * params_.f + (label.gd.gamma - 1),
          label.sts.u * params_.m() + label.sts.zeta};
}

NodeLabel GdStsLabeling::node_label(const NodeId& node) const {
  if (node.size() != 2)
    throw std::invalid_argument("node_label: expected a two-design node");
  const int gd = node[0], sts = node[1];
  if (gd < 0 || gd >= params_.a * params_.f || sts < 0 || sts >= 3 * params_.m())
    throw std::invalid_argument("node_label: block index out of range");
  NodeLabel label;
  label.gd = {gd / params_.f + 1, gd % params_.f + 1};
  label.sts = {sts % params_.m(), sts / params_.m()};
  return label;
}

KeyId GdStsLabeling::key_id(const KeyLabel& label) const {
  const auto it = ids_by_label_.find(label);
  if (it == ids_by_label_.end())
    throw std::invalid_argument("key_id: unknown label " + to_string(label));
  return it->second;
}

KeyLabel GdStsLabeling::key_label(const KeyId& key) const {
  if (key.design < 0 || key.design > 1 ||
      key.symbol < 0 ||
      static_cast<size_t>(key.symbol) >=
          labels_by_symbol_[key.design].size())
    throw std::invalid_argument("key_label: key out of range");
  return labels_by_symbol_[key.design][static_cast<size_t>(key.symbol)];
}

}  // namespace kps
