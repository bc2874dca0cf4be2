#include "rigc/io.hpp"

#include <charconv>
#include <istream>
#include <sstream>

#include "rigc/error.hpp"

namespace rigc {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::InvalidConfig, what); }

const char* step_name(StepKind k) {
  switch (k) {
    case StepKind::Step1: return "1";
    case StepKind::Step2: return "2";
    case StepKind::Step3: return "3";
  }
  return "?";
}

}  // namespace

Json pmf_to_json(const Pmf& p) {
  Json list = Json::array();
  for (const auto& [k, w] : p.entries()) list.push_back(Json::array({k, w}));
  return Json{{"pmf", list}};
}

Pmf pmf_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("pmf") || !j["pmf"].is_array()) bad("expected {\"pmf\": [[k, w], ...]}");
  std::map<int, double> weights;
  for (const auto& e : j["pmf"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number())
      bad("pmf entries must be [integer, weight] pairs");
    const int k = e[0].get<int>();
    if (weights.count(k)) bad("duplicate pmf value " + std::to_string(k));
    weights[k] = e[1].get<double>();
  }
  return pmf_new(weights);
}

Json graph_to_json(const CommunityGraph& g) {
  Json edges = Json::array();
  for (const auto& [u, v] : g.edges()) edges.push_back(Json::array({u + 1, v + 1}));
  return Json{{"n", g.n()}, {"edges", edges}};
}

CommunityGraph graph_from_json(const Json& j) {
  if (j.is_string()) return named_graph(j.get<std::string>());
  if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer())
    bad("graph must be a name or {\"n\": int, \"edges\": [[u, v], ...]}");
  const int n = j["n"].get<int>();
  std::vector<CommunityGraph::Edge> edges;
  if (j.contains("edges")) {
    if (!j["edges"].is_array()) bad("graph edges must be a list");
    for (const auto& e : j["edges"]) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
        bad("graph edges must be [u, v] label pairs");
      edges.emplace_back(e[0].get<int>() - 1, e[1].get<int>() - 1);
    }
  }
  return CommunityGraph(n, std::move(edges));
}

Json catalog_to_json(const CommunityCatalog& c) {
  Json list = Json::array();
  for (const auto& item : c.items())
    list.push_back(Json{{"graph", graph_to_json(item.graph)}, {"weight", item.weight}});
  return list;
}

CommunityCatalog catalog_from_json(const Json& j) {
  if (!j.is_array()) bad("catalog must be a list of {graph, weight}");
  std::vector<std::pair<CommunityGraph, double>> items;
  for (const auto& e : j) {
    if (!e.is_object() || !e.contains("graph") || !e.contains("weight") || !e["weight"].is_number())
      bad("catalog entries must be {\"graph\": ..., \"weight\": number}");
    items.emplace_back(graph_from_json(e["graph"]), e["weight"].get<double>());
  }
  return CommunityCatalog::create(std::move(items));
}

Json params_to_json(const ModelParams& p) {
  Json communities = Json::array();
  for (const auto& c : p.communities) communities.push_back(graph_to_json(c));
  return Json{{"l_degrees", p.l_degrees}, {"communities", communities}};
}

ModelParams params_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("l_degrees") || !j.contains("communities"))
    bad("params must be {\"l_degrees\": [...], \"communities\": [...]}");
  std::vector<int> degrees;
  for (const auto& d : j["l_degrees"]) {
    if (!d.is_number_integer()) bad("l_degrees must be integers");
    degrees.push_back(d.get<int>());
  }
  std::vector<CommunityGraph> communities;
  for (const auto& g : j["communities"]) communities.push_back(graph_from_json(g));
  return build_params(std::move(degrees), std::move(communities));
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void write_edge_list_csv(std::ostream& os, const RigcGraph& g) {
  os << "u,v,mult\n";
  for (const auto& e : g.edges) os << e.u + 1 << ',' << e.v + 1 << ',' << e.mult << '\n';
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  os << "t,step,L,S,S_hat,A\n";
  for (const auto& e : traj.events)
    os << format_double(e.t) << ',' << step_name(e.kind) << ',' << e.L << ',' << e.S << ',' << e.S_hat
       << ',' << e.A << '\n';
}

void CsvTable::write(std::ostream& os) const {
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
}

CsvTable CsvTable::read(std::istream& is) {
  CsvTable t;
  std::string text;
  bool first = true;
  while (std::getline(is, text)) {
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (text.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(text);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (text.back() == ',') cells.emplace_back();
    if (first) {
      t.header = std::move(cells);
      first = false;
    } else {
      t.rows.push_back(std::move(cells));
    }
  }
  return t;
}

}  // namespace rigc
