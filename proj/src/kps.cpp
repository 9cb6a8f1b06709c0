// Block-union key predistribution scheme over verified dual designs.

#include "kps/kps.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace kps {

namespace {

void check_node(const Kps& kps, const NodeId& node, const char* what) {
  if (static_cast<int>(node.size()) != kps.t())
    throw std::invalid_argument(std::string(what) + ": node has " +
                                std::to_string(node.size()) +
                                " coordinates, expected " +
                                std::to_string(kps.t()));
  for (int i = 0; i < kps.t(); ++i) {
    const int b = kps.duals[static_cast<size_t>(i)].b();
    if (node[static_cast<size_t>(i)] < 0 || node[static_cast<size_t>(i)] >= b)
      throw std::invalid_argument(
          std::string(what) + ": block index " +
          std::to_string(node[static_cast<size_t>(i)]) + " out of 0.." +
          std::to_string(b - 1) + " in coordinate " + std::to_string(i));
  }
}

void check_tuple(const Kps& kps, const AssocTuple& t, const char* what) {
  if (static_cast<int>(t.size()) != kps.t())
    throw std::invalid_argument(std::string(what) + ": tuple has " +
                                std::to_string(t.size()) +
                                " entries, expected " +
                                std::to_string(kps.t()));
  bool all_zero = true;
  for (int i = 0; i < kps.t(); ++i) {
    const int j = t[static_cast<size_t>(i)];
    if (j < 0 || j > 2)
      throw std::invalid_argument(std::string(what) +
                                  ": associate class must be 0, 1 or 2");
    if (j == 1 && !kps.duals[static_cast<size_t>(i)].in_Q)
      throw std::invalid_argument(
          std::string(what) + ": dual " + std::to_string(i) +
          " has no first associates, class 1 impossible");
    if (j != 0) all_zero = false;
  }
  if (all_zero)
    throw std::invalid_argument(std::string(what) +
                                ": all-zero tuple denotes a node and itself");
}

}  // namespace

Kps build(std::vector<DualDesign> duals, int q) {
  if (q < 1) throw std::invalid_argument("build: threshold must be >= 1");
  if (static_cast<int>(duals.size()) != q)
    throw std::invalid_argument(
        "build: threshold " + std::to_string(q) + " requires exactly " +
        std::to_string(q) + " dual designs, got " +
        std::to_string(duals.size()));
  Kps kps;
  kps.q = q;
  kps.n = 1;
  for (size_t i = 0; i < duals.size(); ++i) {
    const DualDesign& dd = duals[i];
    if (dd.block_assoc.empty())
      throw std::invalid_argument("build: dual " + std::to_string(i) +
                                  " has no derived association tables");
    if (dd.k_i < q)
      throw std::invalid_argument(
          "build: dual " + std::to_string(i) + " has block size " +
          std::to_string(dd.k_i) + ", below the threshold " +
          std::to_string(q));
    kps.n *= dd.b();
    kps.k += dd.k_i;
    kps.v += dd.v();
  }
  kps.duals = std::move(duals);
  return kps;
}

std::vector<KeyId> node_keys(const Kps& kps, const NodeId& node) {
  check_node(kps, node, "node_keys");
  std::vector<KeyId> keys;
  keys.reserve(static_cast<size_t>(kps.k));
  for (int i = 0; i < kps.t(); ++i) {
    const auto& blk = kps.duals[static_cast<size_t>(i)]
                          .base.blocks[static_cast<size_t>(
                              node[static_cast<size_t>(i)])];
    for (int sym : blk) keys.push_back({i, sym});
  }
  return keys;
}

AssocTuple assoc_tuple(const Kps& kps, const NodeId& a, const NodeId& b) {
  check_node(kps, a, "assoc_tuple");
  check_node(kps, b, "assoc_tuple");
  if (a == b)
    throw std::invalid_argument("assoc_tuple: nodes must be distinct");
  AssocTuple t(a.size());
  for (int i = 0; i < kps.t(); ++i)
    t[static_cast<size_t>(i)] =
        kps.duals[static_cast<size_t>(i)].assoc(a[static_cast<size_t>(i)],
                                                b[static_cast<size_t>(i)]);
  return t;
}

std::vector<AssocTuple> index_set(const Kps& kps) {
  std::vector<AssocTuple> out;
  AssocTuple cur(static_cast<size_t>(kps.t()), 0);
  // Odometer over the per-coordinate digit sets, most significant first, so
  // the output is lexicographic.
  auto digits = [&kps](int i) {
    return kps.duals[static_cast<size_t>(i)].in_Q ? std::vector<int>{0, 1, 2}
                                                  : std::vector<int>{0, 2};
  };
  std::vector<std::vector<int>> ds;
  for (int i = 0; i < kps.t(); ++i) ds.push_back(digits(i));
  std::vector<size_t> pos(static_cast<size_t>(kps.t()), 0);
  while (true) {
    for (int i = 0; i < kps.t(); ++i)
      cur[static_cast<size_t>(i)] =
          ds[static_cast<size_t>(i)][pos[static_cast<size_t>(i)]];
    if (std::any_of(cur.begin(), cur.end(), [](int j) { return j != 0; }))
      out.push_back(cur);
    int i = kps.t() - 1;
    while (i >= 0) {
      if (++pos[static_cast<size_t>(i)] < ds[static_cast<size_t>(i)].size())
        break;
      pos[static_cast<size_t>(i)] = 0;
      --i;
    }
    if (i < 0) break;
  }
  return out;
}

std::int64_t n_count(const Kps& kps, const AssocTuple& t) {
  check_tuple(kps, t, "n_count");
  std::int64_t prod = 1;
  for (int i = 0; i < kps.t(); ++i)
    prod *= kps.duals[static_cast<size_t>(i)]
                .theta[static_cast<size_t>(t[static_cast<size_t>(i)])];
  return prod;
}

std::int64_t p_count(const Kps& kps, const AssocTuple& j, const AssocTuple& u,
                     const AssocTuple& w) {
  check_tuple(kps, j, "p_count");
  check_tuple(kps, u, "p_count");
  check_tuple(kps, w, "p_count");
  std::int64_t prod = 1;
  for (int i = 0; i < kps.t(); ++i)
    prod *= kps.duals[static_cast<size_t>(i)]
                .phi[j[static_cast<size_t>(i)]][u[static_cast<size_t>(i)]]
                    [w[static_cast<size_t>(i)]];
  return prod;
}

std::int64_t lambda_count(const Kps& kps, const AssocTuple& t) {
  check_tuple(kps, t, "lambda_count");
  std::int64_t sum = 0;
  for (int i = 0; i < kps.t(); ++i) {
    const int j = t[static_cast<size_t>(i)];
    if (j == 0) sum += kps.duals[static_cast<size_t>(i)].k_i;
    if (j == 2) sum += 1;
  }
  return sum;
}

DeltaSets delta_set(const Kps& kps) {
  DeltaSets sets;
  for (const AssocTuple& t : index_set(kps)) {
    const bool qualifies = lambda_count(kps, t) >= kps.q;
    // The threshold split has a purely structural description; holding the
    // two in lockstep guards both the lambda arithmetic and the tables.
    const bool has_zero = std::any_of(t.begin(), t.end(),
                                      [](int j) { return j == 0; });
    const bool all_two = std::all_of(t.begin(), t.end(),
                                     [](int j) { return j == 2; });
    if (qualifies != (has_zero || all_two))
      throw std::logic_error(
          "delta_set: tuple " + tuple_label(t) +
          " contradicts the structural test for lambda >= q");
    (qualifies ? sets.delta : sets.delta_bar).push_back(t);
  }
  return sets;
}

std::int64_t mu(const Kps& kps, const AssocTuple& t) {
  check_tuple(kps, t, "mu");
  if (lambda_count(kps, t) >= kps.q)
    throw std::invalid_argument("mu: tuple " + tuple_label(t) +
                                " already meets the threshold");
  const DeltaSets sets = delta_set(kps);
  std::int64_t sum = 0;
  for (const AssocTuple& u : sets.delta)
    for (const AssocTuple& w : sets.delta)
      sum += p_count(kps, t, u, w);
  return sum;
}

NodeId node_from_index(const Kps& kps, std::int64_t index) {
  if (index < 0 || index >= kps.n)
    throw std::invalid_argument("node_from_index: index out of range");
  NodeId node(static_cast<size_t>(kps.t()));
  for (int i = kps.t() - 1; i >= 0; --i) {
    const std::int64_t b = kps.duals[static_cast<size_t>(i)].b();
    node[static_cast<size_t>(i)] = static_cast<int>(index % b);
    index /= b;
  }
  return node;
}

std::int64_t node_index(const Kps& kps, const NodeId& node) {
  check_node(kps, node, "node_index");
  std::int64_t index = 0;
  for (int i = 0; i < kps.t(); ++i)
    index = index * kps.duals[static_cast<size_t>(i)].b() +
            node[static_cast<size_t>(i)];
  return index;
}

std::string tuple_label(const AssocTuple& t) {
  std::string s;
  for (int j : t) s += static_cast<char>('0' + j);
  return s;
}

}  // namespace kps
