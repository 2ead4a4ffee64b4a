#pragma once

// Graph JSON files and deterministic JSON output.
//
//   {"n": 3, "edges": [[1, 2, 1.0], [2, 3]], "s": [1, 1, 1]}
//
// Vertex ids are 1-based; "s" defaults to all ones and a missing third
// entry of an edge means length 1.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "rotdim/error.hpp"
#include "rotdim/graph.hpp"
#include "rotdim/numfmt.hpp"

namespace rotdim {

using Json = nlohmann::ordered_json;

/// Parses the graph document without checking connectivity, so callers can
/// report Disconnected separately from malformed input.
inline Graph graph_from_json(const Json& doc) {
  try {
    if (!doc.is_object() || !doc.contains("n") || !doc.contains("edges")) {
      throw Error(ErrorCode::Parse, "graph document needs \"n\" and \"edges\"");
    }
    const auto n_signed = doc.at("n").get<long long>();
    if (n_signed < 1) throw Error(ErrorCode::Parse, "\"n\" must be at least 1");
    const auto n = static_cast<std::size_t>(n_signed);
    std::vector<WeightedEdge> edges;
    for (const auto& e : doc.at("edges")) {
      if (!e.is_array() || e.size() < 2 || e.size() > 3) {
        throw Error(ErrorCode::Parse, "edge entries are [i, j] or [i, j, length]");
      }
      const auto i = e.at(0).get<long long>();
      const auto j = e.at(1).get<long long>();
      if (i < 1 || j < 1 || static_cast<std::size_t>(i) > n || static_cast<std::size_t>(j) > n) {
        throw Error(ErrorCode::VertexOutOfRange,
                    "edge [" + std::to_string(i) + ", " + std::to_string(j) + "]");
      }
      const double len = e.size() == 3 ? e.at(2).get<double>() : 1.0;
      edges.push_back({static_cast<Vertex>(i - 1), static_cast<Vertex>(j - 1), len});
    }
    std::vector<double> s(n, 1.0);
    if (doc.contains("s")) {
      s = doc.at("s").get<std::vector<double>>();
    }
    return Graph(n, std::move(edges), std::move(s));
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::Parse, ex.what());
  }
}

inline Json graph_to_json(const Graph& g) {
  Json doc;
  doc["n"] = g.vertex_count();
  Json edges = Json::array();
  for (const auto& e : g.weighted_edges()) edges.push_back(Json::array({e.u + 1, e.v + 1, e.length}));
  doc["edges"] = std::move(edges);
  doc["s"] = std::vector<double>(g.vertex_weights().begin(), g.vertex_weights().end());
  return doc;
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Parse, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::Parse, path + ": " + ex.what());
  }
}

namespace detail {

inline void dump_json(std::ostream& out, const Json& j, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent * depth), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out << "{}";
        return;
      }
      out << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out << ",\n";
        first = false;
        out << pad << Json(it.key()).dump() << ": ";
        dump_json(out, it.value(), indent, depth + 1);
      }
      out << '\n' << close_pad << '}';
      return;
    }
    case Json::value_t::array: {
      // Arrays of scalars stay on one line.
      const bool flat = std::all_of(j.begin(), j.end(), [](const Json& x) { return x.is_primitive(); });
      if (j.empty()) {
        out << "[]";
        return;
      }
      if (flat) {
        out << '[';
        for (std::size_t k = 0; k < j.size(); ++k) {
          if (k) out << ", ";
          dump_json(out, j[k], indent, depth + 1);
        }
        out << ']';
        return;
      }
      out << "[\n";
      for (std::size_t k = 0; k < j.size(); ++k) {
        if (k) out << ",\n";
        out << pad;
        dump_json(out, j[k], indent, depth + 1);
      }
      out << '\n' << close_pad << ']';
      return;
    }
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      if (std::isfinite(x)) {
        out << format_g17(x);
      } else {
        out << "null";
      }
      return;
    }
    default:
      out << j.dump();
  }
}

}  // namespace detail

/// Pretty JSON with every float at 17 significant digits.
inline std::string dump_json(const Json& j) {
  std::ostringstream out;
  detail::dump_json(out, j, 2, 0);
  out << '\n';
  return out.str();
}

}  // namespace rotdim
