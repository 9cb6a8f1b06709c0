#pragma once

// JSON spec parsing for schemes, designs, and whole CLI runs, plus the CSV
// and JSON report renderers shared by the command-line tool.

#include "kps/design.hpp"
#include "kps/metrics.hpp"
#include "kps/oracle.hpp"
#include "kps/scheme.hpp"

#include <json.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace kps {

// Malformed or inconsistent spec input. Construction failures from the
// design layer propagate as their own exception types.
class SpecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Accepted fragments:
//   {"scheme":"gd","a":2,"f":3}
//   {"scheme":"triangular","m":5}
//   {"scheme":"latin","p":4,"k":3,"squares":[[[0,...],...],...]}
// Squares are row-major matrices; when omitted the cyclic family over a
// prime p fills in.
AssociationScheme scheme_from_json(const nlohmann::json& spec);

// Accepted fragments:
//   {"design":"pbib2","scheme":{...}}
//   {"design":"latin_pbib","p":17,"k":12}      (cyclic squares by default)
//   {"design":"sts","g":28}                    (Bose for g=3h+1, Skolem for 3h)
//   {"design":"explicit","v":9,"blocks":[[4,7,2],...]}
// Explicit symbols are 1-based and block order is preserved; the role is
// inferred from the concurrence pattern when possible.
BlockDesign design_from_json(const nlohmann::json& spec);

// Explicit form with 1-based symbols. Re-importing yields a design with
// identical blocks and role.
nlohmann::json design_to_json(const BlockDesign& d);

struct RunSpec {
  std::vector<nlohmann::json> designs;
  int q = 0;  // 0 means "number of designs"
  std::vector<std::int64_t> etas = {1, 2, 3, 4, 5, 10, 15, 20};
  std::vector<std::int64_t> ss = {1, 2, 3, 4, 5, 6, 8, 10};
  BetaMode beta_mode = BetaMode::approx;
  FailMode fail_mode = FailMode::approx;
  McConfig oracle;
};

// {"designs":[...],"q":2,"etas":[...],"s":[...],"beta_mode":"approx",
//  "fail_mode":"exact","trials":100000,"seed":42,"shards":1}
// Everything but "designs" is optional and falls back to the struct
// defaults; q defaults to the design count.
RunSpec runspec_from_json(const nlohmann::json& spec);

// designs -> duals -> KPS with the spec's threshold.
Kps kps_from_runspec(const RunSpec& spec);

extern const char* const kToolVersion;

// Reports are deterministic: the same inputs produce the same bytes. The
// CSV opens with a version comment and a metric,parameter,value header;
// the JSON carries "schema": 1 and exact rationals beside the decimals.
std::string report_csv(const Kps& kps, const ConnectivityReport& conn,
                       const ResiliencyReport& res, int precision);
nlohmann::json report_json(const Kps& kps, const ConnectivityReport& conn,
                           const ResiliencyReport& res, int precision);

std::string rational_string(const BigRat& value);

}  // namespace kps
