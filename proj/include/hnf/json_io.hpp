#pragma once

#include <nlohmann/json.hpp>

#include "hnf/network_system.hpp"
#include "hnf/normal_form.hpp"

namespace hnf {

using Json = nlohmann::ordered_json;

// {"n": int, "terms": [{"s":[...],"t":[...],"re":f,"im":f}, ...]}
// terms in graded-lex order (the polynomial's canonical iteration order)
Json poly_to_json(const ConjPolynomial& p);
ConjPolynomial poly_from_json(const Json& j);

// {"n", "adjacency", "lambda", "omega", "beta_re", "beta_im",
//  "coupling": 2-slot polynomial, "alpha", "eps_res"}
Json system_to_json(const NetworkSystem& sys);
NetworkSystem system_from_json(const Json& j);

// hyperedge list with provenance tags ("1G"/"2G"), 1-based node indices,
// deterministic (node, graded-lex monomial, tag) ordering
Json hypernetwork_to_json(const Hypernetwork& hn);
Hypernetwork hypernetwork_from_json(const Json& j);

Json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const Json& j);

}  // namespace hnf
