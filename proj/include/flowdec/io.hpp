// Copyright 2026 The Flowdec Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// File formats: instance JSON (graph + optional per-edge flow and bounds,
// "inf" for unbounded uppers), scenario-set JSON (nominal bounds, budget,
// accepted scenarios, keyed by decimal edge id), and the results CSV. The
// writers emit one canonical byte layout so round trips are exact; the
// parsers accept any JSON layout with the right fields.

#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "flowdec/common.hpp"
#include "flowdec/graph.hpp"
#include "flowdec/scenario_gen.hpp"

namespace flowdec {

struct InstanceEdgeSpec {
  EdgeId id = 0;
  NodeId from = 0;
  NodeId to = 0;
  std::optional<Flow> flow;   // nominal value; doubles as both bounds
  std::optional<Flow> lower;  // explicit lower bound, wins over flow
  std::optional<OptFlow> upper;  // absent, finite, or recorded "inf"
};

struct Instance {
  std::string name;
  NodeId source = 0;
  NodeId sink = 0;
  std::vector<NodeId> nodes;
  std::vector<InstanceEdgeSpec> edges;
};

inline Graph instance_graph(const Instance& inst) {
  std::vector<Edge> edges;
  for (const InstanceEdgeSpec& e : inst.edges)
    edges.push_back({e.id, e.from, e.to});
  return Graph(inst.nodes, inst.source, inst.sink, std::move(edges));
}

// Bounds the instance actually constrains: an explicit bound wins, else the
// recorded flow pins the edge exactly, else the edge is unconstrained.
inline InexactBounds effective_bounds(const Instance& inst) {
  InexactBounds b;
  for (const InstanceEdgeSpec& e : inst.edges) {
    b.lower.push_back(e.lower ? *e.lower : (e.flow ? *e.flow : 0));
    if (e.upper)
      b.upper.push_back(*e.upper);
    else
      b.upper.push_back(e.flow ? OptFlow{*e.flow} : std::nullopt);
  }
  return b;
}

// The recorded flow, when every edge has one.
inline std::optional<FlowAssignment> instance_flow(const Instance& inst) {
  FlowAssignment f;
  for (const InstanceEdgeSpec& e : inst.edges) {
    if (!e.flow) return std::nullopt;
    f.value.push_back(*e.flow);
  }
  return f;
}

struct ScenarioFile {
  double gamma = 0.0;
  InexactBounds nominal;  // empty vectors when the file records none
  std::vector<InexactBounds> scenarios;
};

inline ScenarioFile to_scenario_file(const GeneratedSet& set) {
  return ScenarioFile{set.gamma, set.nominal, set.scenarios};
}

namespace detail {

inline std::string format_number(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;  // 32 bytes always fit the shortest round-trip form
  return std::string(buf, end);
}

inline std::string json_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out + "\"";
}

inline const nlohmann::json& require_field(const nlohmann::json& j,
                                           const char* key,
                                           const char* where) {
  auto it = j.find(key);
  if (it == j.end())
    throw ParseError(std::string(where) + " is missing \"" + key + "\"");
  return *it;
}

inline int64_t require_int(const nlohmann::json& j, const char* key,
                           const char* where) {
  const nlohmann::json& v = require_field(j, key, where);
  if (!v.is_number_integer())
    throw ParseError(std::string(where) + " field \"" + key +
                     "\" must be an integer");
  return v.get<int64_t>();
}

inline Flow nonneg_flow(const nlohmann::json& v, const char* key,
                        const char* where) {
  if (!v.is_number_integer() || v.get<int64_t>() < 0)
    throw ParseError(std::string(where) + " field \"" + key +
                     "\" must be a nonnegative integer");
  return v.get<int64_t>();
}

// A bound value that may be the literal "inf".
inline OptFlow flow_or_inf(const nlohmann::json& v, const char* key,
                           const char* where) {
  if (v.is_string()) {
    if (v.get<std::string>() == "inf") return std::nullopt;
    throw ParseError(std::string(where) + " field \"" + key +
                     "\" must be an integer or \"inf\"");
  }
  return nonneg_flow(v, key, where);
}

inline nlohmann::json parse_json(const std::string& text, const char* what) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded())
    throw ParseError(std::string(what) + " is not valid JSON");
  return j;
}

// Per-edge map keyed by decimal edge id; missing keys fall back to the
// given defaults, unknown keys are an error (they signal a file written
// for a different graph).
inline void read_bounds_map(const nlohmann::json& j, const Graph& g,
                            const char* where, InexactBounds* out) {
  const nlohmann::json empty = nlohmann::json::object();
  const nlohmann::json* lower = &empty;
  const nlohmann::json* upper = &empty;
  if (auto it = j.find("lower"); it != j.end()) lower = &*it;
  if (auto it = j.find("upper"); it != j.end()) upper = &*it;
  if (!lower->is_object() || !upper->is_object())
    throw ParseError(std::string(where) +
                     " bounds must be objects keyed by edge id");
  for (const nlohmann::json* side : {lower, upper})
    for (auto it = side->begin(); it != side->end(); ++it) {
      EdgeId id = 0;
      const std::string& key = it.key();
      auto [end, ec] = std::from_chars(key.data(), key.data() + key.size(), id);
      if (ec != std::errc{} || end != key.data() + key.size() ||
          !g.has_edge_id(id))
        throw ParseError(std::string(where) + " keys an unknown edge \"" +
                         key + "\"");
    }
  for (int e = 0; e < g.num_edges(); ++e) {
    const std::string key = std::to_string(g.edge(e).id);
    auto lo = lower->find(key);
    out->lower.push_back(lo == lower->end()
                             ? 0
                             : nonneg_flow(*lo, key.c_str(), where));
    auto hi = upper->find(key);
    out->upper.push_back(hi == upper->end()
                             ? OptFlow{}
                             : flow_or_inf(*hi, key.c_str(), where));
  }
}

inline void write_bounds_map(const Graph& g, const InexactBounds& b,
                             const std::string& indent, std::string* out) {
  *out += indent + "\"lower\": {";
  for (int e = 0; e < g.num_edges(); ++e) {
    if (e) *out += ", ";
    *out += "\"" + std::to_string(g.edge(e).id) +
            "\": " + std::to_string(b.lower[static_cast<size_t>(e)]);
  }
  *out += "},\n" + indent + "\"upper\": {";
  for (int e = 0; e < g.num_edges(); ++e) {
    if (e) *out += ", ";
    *out += "\"" + std::to_string(g.edge(e).id) + "\": ";
    const OptFlow& u = b.upper[static_cast<size_t>(e)];
    *out += u ? std::to_string(*u) : "\"inf\"";
  }
  *out += "}\n";
}

}  // namespace detail

inline Instance parse_instance(const std::string& text) {
  nlohmann::json j = detail::parse_json(text, "instance file");
  if (!j.is_object()) throw ParseError("instance file must be an object");
  Instance inst;
  const nlohmann::json& name = detail::require_field(j, "name", "instance");
  if (!name.is_string()) throw ParseError("instance \"name\" must be a string");
  inst.name = name.get<std::string>();
  inst.source = detail::require_int(j, "source", "instance");
  inst.sink = detail::require_int(j, "sink", "instance");
  const nlohmann::json& nodes = detail::require_field(j, "nodes", "instance");
  if (!nodes.is_array()) throw ParseError("instance \"nodes\" must be a list");
  for (const nlohmann::json& n : nodes) {
    if (!n.is_number_integer())
      throw ParseError("instance node ids must be integers");
    inst.nodes.push_back(n.get<int64_t>());
  }
  const nlohmann::json& edges = detail::require_field(j, "edges", "instance");
  if (!edges.is_array()) throw ParseError("instance \"edges\" must be a list");
  for (const nlohmann::json& e : edges) {
    if (!e.is_object()) throw ParseError("each edge must be an object");
    InstanceEdgeSpec spec;
    spec.id = detail::require_int(e, "id", "edge");
    spec.from = detail::require_int(e, "from", "edge");
    spec.to = detail::require_int(e, "to", "edge");
    if (auto it = e.find("flow"); it != e.end())
      spec.flow = detail::nonneg_flow(*it, "flow", "edge");
    if (auto it = e.find("lower"); it != e.end())
      spec.lower = detail::nonneg_flow(*it, "lower", "edge");
    if (auto it = e.find("upper"); it != e.end())
      spec.upper = detail::flow_or_inf(*it, "upper", "edge");
    inst.edges.push_back(spec);
  }
  return inst;
}

inline std::string serialize_instance(const Instance& inst) {
  std::string out = "{\n";
  out += "  \"name\": " + detail::json_quote(inst.name) + ",\n";
  out += "  \"source\": " + std::to_string(inst.source) + ",\n";
  out += "  \"sink\": " + std::to_string(inst.sink) + ",\n";
  out += "  \"nodes\": [";
  for (size_t i = 0; i < inst.nodes.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(inst.nodes[i]);
  }
  out += "],\n  \"edges\": [\n";
  for (size_t i = 0; i < inst.edges.size(); ++i) {
    const InstanceEdgeSpec& e = inst.edges[i];
    out += "    {\"id\": " + std::to_string(e.id) +
           ", \"from\": " + std::to_string(e.from) +
           ", \"to\": " + std::to_string(e.to);
    if (e.flow) out += ", \"flow\": " + std::to_string(*e.flow);
    if (e.lower) out += ", \"lower\": " + std::to_string(*e.lower);
    if (e.upper)
      out += ", \"upper\": " + (*e.upper ? std::to_string(**e.upper)
                                         : std::string("\"inf\""));
    out += i + 1 < inst.edges.size() ? "},\n" : "}\n";
  }
  out += "  ]\n}\n";
  return out;
}

inline ScenarioFile parse_scenarios(const std::string& text, const Graph& g) {
  nlohmann::json j = detail::parse_json(text, "scenario file");
  if (!j.is_object()) throw ParseError("scenario file must be an object");
  ScenarioFile file;
  if (auto it = j.find("gamma"); it != j.end()) {
    if (!it->is_number()) throw ParseError("\"gamma\" must be a number");
    file.gamma = it->get<double>();
  }
  if (auto it = j.find("nominal"); it != j.end()) {
    if (!it->is_object()) throw ParseError("\"nominal\" must be an object");
    detail::read_bounds_map(*it, g, "nominal", &file.nominal);
  }
  const nlohmann::json& arr =
      detail::require_field(j, "scenarios", "scenario file");
  if (!arr.is_array() || arr.empty())
    throw ParseError("\"scenarios\" must be a non-empty list");
  for (const nlohmann::json& s : arr) {
    if (!s.is_object()) throw ParseError("each scenario must be an object");
    InexactBounds b;
    detail::read_bounds_map(s, g, "scenario", &b);
    file.scenarios.push_back(std::move(b));
  }
  return file;
}

inline std::string serialize_scenarios(const ScenarioFile& file,
                                       const Graph& g) {
  std::string out = "{\n";
  out += "  \"gamma\": " + detail::format_number(file.gamma) + ",\n";
  if (!file.nominal.lower.empty()) {
    out += "  \"nominal\": {\n";
    detail::write_bounds_map(g, file.nominal, "    ", &out);
    out += "  },\n";
  }
  out += "  \"scenarios\": [\n";
  for (size_t s = 0; s < file.scenarios.size(); ++s) {
    out += "    {\n";
    detail::write_bounds_map(g, file.scenarios[s], "      ", &out);
    out += s + 1 < file.scenarios.size() ? "    },\n" : "    }\n";
  }
  out += "  ]\n}\n";
  return out;
}

inline const char* status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kFeasible: return "feasible";
    case SolveStatus::kInfeasible: return "infeasible";
    case SolveStatus::kTimeLimit: return "time_limit";
  }
  return "unknown";
}

inline constexpr const char* kResultCsvHeader =
    "instance,method,set_size,gamma_prime,seed,y,w,objective,iterations,"
    "runtime_seconds,status";

struct ResultRow {
  std::string instance;
  std::string method;  // ma | la | naive | strict | det | poly
  int64_t set_size = 0;
  double gamma_prime = 0.0;
  uint64_t seed = 0;
  int64_t y = 0;
  Flow w = 0;
  double objective = 0.0;
  int64_t iterations = 0;
  double runtime_seconds = 0.0;
  std::string status;
};

inline std::string csv_line(const ResultRow& r) {
  std::string out;
  out += r.instance + "," + r.method + ",";
  out += std::to_string(r.set_size) + ",";
  out += detail::format_number(r.gamma_prime) + ",";
  out += std::to_string(r.seed) + ",";
  out += std::to_string(r.y) + "," + std::to_string(r.w) + ",";
  out += detail::format_number(r.objective) + ",";
  out += std::to_string(r.iterations) + ",";
  out += detail::format_number(r.runtime_seconds) + ",";
  out += r.status;
  return out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << content;
}

}  // namespace flowdec
