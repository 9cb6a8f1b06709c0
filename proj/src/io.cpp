#include "kps/io.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <utility>

namespace kps {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) { throw SpecError(what); }

const json& field(const json& spec, const char* key, const char* what) {
  if (!spec.is_object() || !spec.contains(key))
    bad(std::string(what) + ": missing field \"" + key + "\"");
  return spec.at(key);
}

std::int64_t int_field(const json& spec, const char* key, const char* what) {
  const json& j = field(spec, key, what);
  if (!j.is_number_integer())
    bad(std::string(what) + ": field \"" + key + "\" must be an integer");
  return j.get<std::int64_t>();
}

std::string string_field(const json& spec, const char* key,
                         const char* what) {
  const json& j = field(spec, key, what);
  if (!j.is_string())
    bad(std::string(what) + ": field \"" + key + "\" must be a string");
  return j.get<std::string>();
}

std::vector<LatinSquare> squares_field(const json& spec, int p,
                                       const char* what) {
  const json& j = spec.at("squares");
  if (!j.is_array()) bad(std::string(what) + ": \"squares\" must be an array");
  std::vector<LatinSquare> out;
  for (const json& sq : j) {
    if (!sq.is_array() || sq.size() != static_cast<size_t>(p))
      bad(std::string(what) + ": each square must have " + std::to_string(p) +
          " rows");
    LatinSquare square;
    for (const json& row : sq) {
      if (!row.is_array() || row.size() != static_cast<size_t>(p))
        bad(std::string(what) + ": each square row must have " +
            std::to_string(p) + " entries");
      std::vector<int> cells;
      for (const json& cell : row) {
        if (!cell.is_number_integer())
          bad(std::string(what) + ": square entries must be integers");
        cells.push_back(cell.get<int>());
      }
      square.push_back(std::move(cells));
    }
    out.push_back(std::move(square));
  }
  return out;
}

BlockDesign explicit_design(const json& spec) {
  const char* what = "explicit design";
  const std::int64_t v = int_field(spec, "v", what);
  if (v < 2 || v > 1000000) bad(std::string(what) + ": v out of range");
  const json& jb = field(spec, "blocks", what);
  if (!jb.is_array() || jb.empty())
    bad(std::string(what) + ": \"blocks\" must be a nonempty array");

  BlockDesign d;
  d.v_star = static_cast<int>(v);
  for (const json& jblock : jb) {
    if (!jblock.is_array() || jblock.empty())
      bad(std::string(what) + ": each block must be a nonempty array");
    std::vector<int> block;
    for (const json& sym : jblock) {
      if (!sym.is_number_integer())
        bad(std::string(what) + ": symbols must be integers");
      const std::int64_t s = sym.get<std::int64_t>();
      if (s < 1 || s > v)
        bad(std::string(what) + ": symbol " + std::to_string(s) +
            " outside 1.." + std::to_string(v));
      block.push_back(static_cast<int>(s - 1));
    }
    std::sort(block.begin(), block.end());
    if (std::adjacent_find(block.begin(), block.end()) != block.end())
      bad(std::string(what) + ": a block repeats a symbol");
    d.blocks.push_back(std::move(block));
  }

  d.k_star = static_cast<int>(d.blocks.front().size());
  for (const auto& block : d.blocks)
    if (static_cast<int>(block.size()) != d.k_star)
      bad(std::string(what) + ": block sizes differ");
  std::vector<int> replication(static_cast<size_t>(v), 0);
  for (const auto& block : d.blocks)
    for (int s : block) ++replication[static_cast<size_t>(s)];
  d.r_star = replication[0];
  for (std::int64_t s = 0; s < v; ++s)
    if (replication[static_cast<size_t>(s)] != d.r_star)
      bad(std::string(what) + ": symbol " + std::to_string(s + 1) +
          " appears " + std::to_string(replication[static_cast<size_t>(s)]) +
          " times, others " + std::to_string(d.r_star));
  d.role = classify_role(d);
  return d;
}

std::string decimal(const BigRat& x, int precision) {
  return format_decimal(x, precision);
}

json value_json(const BigRat& x, int precision) {
  return json{{"decimal", decimal(x, precision)},
              {"rational", rational_string(x)}};
}

}  // namespace

const char* const kToolVersion = "kpstool 1.0.0";

AssociationScheme scheme_from_json(const json& spec) {
  const std::string family = string_field(spec, "scheme", "scheme spec");
  if (family == "gd") {
    return gd_scheme(static_cast<int>(int_field(spec, "a", "gd scheme")),
                     static_cast<int>(int_field(spec, "f", "gd scheme")));
  }
  if (family == "triangular") {
    return triangular_scheme(
        static_cast<int>(int_field(spec, "m", "triangular scheme")));
  }
  if (family == "latin") {
    const int p = static_cast<int>(int_field(spec, "p", "latin scheme"));
    const int k = static_cast<int>(int_field(spec, "k", "latin scheme"));
    std::vector<LatinSquare> mols;
    if (spec.contains("squares"))
      mols = squares_field(spec, p, "latin scheme");
    else if (k > 2)
      mols = cyclic_mols(p, k - 2);
    return latin_square_scheme(p, k, mols);
  }
  bad("scheme spec: unknown family \"" + family + "\"");
}

BlockDesign design_from_json(const json& spec) {
  const std::string kind = string_field(spec, "design", "design spec");
  if (kind == "pbib2")
    return pbib_second_associates(
        scheme_from_json(field(spec, "scheme", "pbib2 design")));
  if (kind == "latin_pbib") {
    const int p = static_cast<int>(int_field(spec, "p", "latin_pbib design"));
    const int k = static_cast<int>(int_field(spec, "k", "latin_pbib design"));
    std::vector<LatinSquare> mols;
    if (spec.contains("squares"))
      mols = squares_field(spec, p, "latin_pbib design");
    else if (k > 2)
      mols = cyclic_mols(p, k - 2);
    return latin_square_pbib(p, k, mols);
  }
  if (kind == "sts") {
    const std::int64_t g = int_field(spec, "g", "sts design");
    if (g % 3 == 1) return steiner_triple_bose(static_cast<int>(g));
    if (g % 3 == 0) return steiner_triple_skolem(static_cast<int>(g));
    bad("sts design: no construction for replication g = " +
        std::to_string(g) + " (need g = 3h or 3h+1)");
  }
  if (kind == "explicit") return explicit_design(spec);
  bad("design spec: unknown kind \"" + kind + "\"");
}

json design_to_json(const BlockDesign& d) {
  json blocks = json::array();
  for (const auto& block : d.blocks) {
    json jb = json::array();
    for (int s : block) jb.push_back(s + 1);
    blocks.push_back(std::move(jb));
  }
  return json{{"design", "explicit"}, {"v", d.v_star},
              {"blocks", std::move(blocks)}};
}

RunSpec runspec_from_json(const json& spec) {
  if (!spec.is_object()) bad("run spec: expected a JSON object");
  RunSpec rs;
  const json& jd = field(spec, "designs", "run spec");
  if (!jd.is_array() || jd.empty())
    bad("run spec: \"designs\" must be a nonempty array");
  for (const json& frag : jd) rs.designs.push_back(frag);

  if (spec.contains("q")) {
    rs.q = static_cast<int>(int_field(spec, "q", "run spec"));
    if (rs.q < 1) bad("run spec: q must be positive");
  }
  const auto int_list = [&](const char* key) {
    const json& j = spec.at(key);
    if (!j.is_array() || j.empty())
      bad(std::string("run spec: \"") + key +
          "\" must be a nonempty integer array");
    std::vector<std::int64_t> out;
    for (const json& e : j) {
      if (!e.is_number_integer() || e.get<std::int64_t>() < 0)
        bad(std::string("run spec: \"") + key +
            "\" entries must be nonnegative integers");
      out.push_back(e.get<std::int64_t>());
    }
    return out;
  };
  if (spec.contains("etas")) rs.etas = int_list("etas");
  if (spec.contains("s")) rs.ss = int_list("s");

  const auto mode = [&](const char* key, auto exact, auto approx,
                        auto fallback) {
    if (!spec.contains(key)) return fallback;
    const std::string m = string_field(spec, key, "run spec");
    if (m == "exact") return exact;
    if (m == "approx") return approx;
    bad(std::string("run spec: \"") + key + "\" must be exact or approx");
  };
  rs.beta_mode =
      mode("beta_mode", BetaMode::exact, BetaMode::approx, rs.beta_mode);
  rs.fail_mode =
      mode("fail_mode", FailMode::exact, FailMode::approx, rs.fail_mode);

  if (spec.contains("trials")) {
    const std::int64_t t = int_field(spec, "trials", "run spec");
    if (t < 1) bad("run spec: trials must be positive");
    rs.oracle.trials = t;
  }
  if (spec.contains("seed")) {
    const json& j = spec.at("seed");
    if (!j.is_number_unsigned() && !j.is_number_integer())
      bad("run spec: seed must be an integer");
    rs.oracle.seed = j.get<std::uint64_t>();
  }
  if (spec.contains("shards")) {
    const std::int64_t sh = int_field(spec, "shards", "run spec");
    if (sh < 1) bad("run spec: shards must be positive");
    rs.oracle.shards = static_cast<int>(sh);
  }
  return rs;
}

Kps kps_from_runspec(const RunSpec& spec) {
  std::vector<DualDesign> duals;
  for (const json& frag : spec.designs)
    duals.push_back(dual(design_from_json(frag)));
  const int q = spec.q > 0 ? spec.q : static_cast<int>(spec.designs.size());
  return build(std::move(duals), q);
}

std::string rational_string(const BigRat& value) {
  std::ostringstream os;
  os << value;
  return os.str();
}

std::string report_csv(const Kps& kps, const ConnectivityReport& conn,
                       const ResiliencyReport& res, int precision) {
  std::ostringstream os;
  os << "# " << kToolVersion << " schema 1\n";
  os << "metric,parameter,value\n";
  os << "v,," << kps.v << "\n";
  os << "n,," << kps.n << "\n";
  os << "k,," << kps.k << "\n";
  os << "q,," << kps.q << "\n";
  os << "beta_mode,,"
     << (conn.mode == BetaMode::exact ? "exact" : "approx") << "\n";
  os << "fail_mode,,"
     << (res.mode == FailMode::exact ? "exact" : "approx") << "\n";
  os << "pr1,," << decimal(conn.pr1, precision) << "\n";
  for (const auto& [eta, p2] : conn.pr2_by_eta)
    os << "pr2,eta=" << eta << "," << decimal(p2, precision) << "\n";
  for (const auto& [eta, p] : conn.pr_by_eta)
    os << "pr,eta=" << eta << "," << decimal(p, precision) << "\n";
  for (const auto& [t, count] : conn.n_table)
    os << "n_assoc,tuple=" << tuple_label(t) << "," << count << "\n";
  for (const auto& [t, count] : conn.mu_table)
    os << "mu,tuple=" << tuple_label(t) << "," << count << "\n";
  for (const auto& [s, fr] : res.fail_by_s)
    os << "fail,s=" << s << "," << decimal(fr.value, precision) << "\n";
  for (const auto& [t, xis] : res.xi_table)
    for (size_t i = 0; i < xis.size(); ++i)
      os << "xi,tuple=" << tuple_label(t) << " s=" << res.fail_by_s[i].first
         << "," << decimal(xis[i], precision) << "\n";
  for (const auto& [s, fr] : res.fail_by_s)
    if (!fr.precondition_ok)
      os << "# warning s=" << s << ": " << fr.warning << "\n";
  return os.str();
}

json report_json(const Kps& kps, const ConnectivityReport& conn,
                 const ResiliencyReport& res, int precision) {
  json rep;
  rep["schema"] = 1;
  rep["tool"] = kToolVersion;
  rep["v"] = kps.v;
  rep["n"] = kps.n;
  rep["k"] = kps.k;
  rep["q"] = kps.q;
  rep["t"] = kps.t();
  rep["beta_mode"] = conn.mode == BetaMode::exact ? "exact" : "approx";
  rep["fail_mode"] = res.mode == FailMode::exact ? "exact" : "approx";
  rep["precision"] = precision;
  rep["pr1"] = value_json(conn.pr1, precision);
  json pr2s = json::array();
  for (const auto& [eta, p2] : conn.pr2_by_eta) {
    json row = value_json(p2, precision);
    row["eta"] = eta;
    pr2s.push_back(std::move(row));
  }
  rep["pr2"] = std::move(pr2s);
  json prs = json::array();
  for (const auto& [eta, p] : conn.pr_by_eta) {
    json row = value_json(p, precision);
    row["eta"] = eta;
    prs.push_back(std::move(row));
  }
  rep["pr"] = std::move(prs);
  json ns = json::array();
  for (const auto& [t, count] : conn.n_table)
    ns.push_back(json{{"tuple", tuple_label(t)}, {"count", count}});
  rep["n_assoc"] = std::move(ns);
  json mus = json::array();
  for (const auto& [t, count] : conn.mu_table)
    mus.push_back(json{{"tuple", tuple_label(t)}, {"count", count}});
  rep["mu"] = std::move(mus);
  json fails = json::array();
  for (const auto& [s, fr] : res.fail_by_s) {
    json row = value_json(fr.value, precision);
    row["s"] = s;
    row["precondition_ok"] = fr.precondition_ok;
    if (!fr.precondition_ok) row["warning"] = fr.warning;
    fails.push_back(std::move(row));
  }
  rep["fail"] = std::move(fails);
  json xis = json::array();
  for (const auto& [t, values] : res.xi_table) {
    json row;
    row["tuple"] = tuple_label(t);
    json vals = json::array();
    for (size_t i = 0; i < values.size(); ++i) {
      json v = value_json(values[i], precision);
      v["s"] = res.fail_by_s[i].first;
      vals.push_back(std::move(v));
    }
    row["values"] = std::move(vals);
    xis.push_back(std::move(row));
  }
  rep["xi"] = std::move(xis);
  return rep;
}

}  // namespace kps
