#pragma once

#include <json.hpp>
#include <ostream>
#include <string>
#include <vector>

#include "rigc/community.hpp"
#include "rigc/components.hpp"
#include "rigc/explore.hpp"
#include "rigc/model.hpp"
#include "rigc/pmf.hpp"

namespace rigc {

using Json = nlohmann::json;

/// {"pmf": [[k, weight], ...]} sorted by k.
Json pmf_to_json(const Pmf& p);
Pmf pmf_from_json(const Json& j);

/// {"n": int, "edges": [[u, v], ...]} with labels 1..n. A string such as "K3"
/// is accepted as a named graph on input.
Json graph_to_json(const CommunityGraph& g);
CommunityGraph graph_from_json(const Json& j);

/// [{"graph": ..., "weight": w}, ...]
Json catalog_to_json(const CommunityCatalog& c);
CommunityCatalog catalog_from_json(const Json& j);

/// {"l_degrees": [...], "communities": [graph, ...]}
Json params_to_json(const ModelParams& p);
ModelParams params_from_json(const Json& j);

/// Shortest decimal form that reads back to the same double.
std::string format_double(double x);

/// Rows "u,v,mult" with 1-based labels, after a header line.
void write_edge_list_csv(std::ostream& os, const RigcGraph& g);

/// Rows "t,step,L,S,S_hat,A" after a header line.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

/// Minimal CSV table: a header and rows of preformatted cells.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void write(std::ostream& os) const;
  /// Splits on commas; no quoting is supported.
  static CsvTable read(std::istream& is);
};

}  // namespace rigc
