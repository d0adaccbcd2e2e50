#pragma once

#include <fstream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "msl/arrangement.hpp"
#include "msl/errors.hpp"
#include "msl/homology.hpp"
#include "msl/matroid.hpp"
#include "msl/morse.hpp"
#include "msl/poset.hpp"
#include "msl/simplicial.hpp"

namespace msl {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Reading helpers (all failures are input errors with the offending context).

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw input_error("invalid JSON in '" + path + "': " + e.what());
  }
  return j;
}

inline void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw input_error("cannot write file '" + path + "'");
  out << j.dump(2) << "\n";
}

inline int json_int(const json& j, const std::string& what) {
  if (!j.is_number_integer()) throw input_error(what + ": expected an integer");
  return j.get<int>();
}

inline std::vector<int> json_int_set(const json& j, const std::string& what) {
  if (!j.is_array()) throw input_error(what + ": expected an array of integers");
  std::vector<int> out;
  for (const auto& e : j) out.push_back(json_int(e, what));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// "{1,3,7}" -> {1,3,7}; inverse of set_id.
inline std::vector<int> parse_set_id(const std::string& s) {
  if (s.size() < 2 || s.front() != '{' || s.back() != '}')
    throw input_error("malformed set id '" + s + "'");
  std::vector<int> out;
  std::string body = s.substr(1, s.size() - 2);
  std::stringstream ss(body);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      out.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw input_error("malformed set id '" + s + "'");
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Betti reports.

inline json betti_json(const BettiVector& b, Field field) {
  json deg = json::object();
  const int top = std::max(b.top_degree(), -1);
  for (int d = -1; d <= top; ++d) deg[std::to_string(d)] = b.at(d);
  return json{{"field", field_name(field)}, {"betti", deg}};
}

// ---------------------------------------------------------------------------
// Posets.

inline json poset_json(const FinitePoset& p) {
  json elements = json::array();
  for (int i = 0; i < p.size(); ++i) elements.push_back(p.id(i));
  json covers = json::array();
  for (const auto& [lo, hi] : p.cover_pairs()) covers.push_back(json::array({lo, hi}));
  return json{{"elements", elements}, {"covers", covers}};
}

// ---------------------------------------------------------------------------
// Matroid specs.  The canonical form is JSON; the command-line shorthand
// lowers onto it.  `boolean:n` lowers to uniform r=n.

inline json matroid_spec_to_json(const std::string& spec) {
  auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (kind == "builtin") {
    if (rest != "fano") throw input_error("unknown builtin matroid '" + rest + "'");
    return json{{"builtin", "fano"}};
  }
  if (kind == "boolean") {
    int n = 0;
    try {
      n = std::stoi(rest);
    } catch (const std::exception&) {
      throw input_error("boolean matroid: bad size '" + rest + "'");
    }
    return json{{"uniform", {{"r", n}, {"n", n}}}};
  }
  if (kind == "uniform") {
    auto comma = rest.find(',');
    if (comma == std::string::npos)
      throw input_error("uniform matroid: expected 'uniform:R,N', got '" + spec + "'");
    try {
      return json{{"uniform",
                   {{"r", std::stoi(rest.substr(0, comma))}, {"n", std::stoi(rest.substr(comma + 1))}}}};
    } catch (const std::exception&) {
      throw input_error("uniform matroid: bad parameters in '" + spec + "'");
    }
  }
  if (kind == "gfp") {
    auto second = rest.find(':');
    if (second == std::string::npos)
      throw input_error("gfp matroid: expected 'gfp:P:col,col,...', got '" + spec + "'");
    int p = 0;
    try {
      p = std::stoi(rest.substr(0, second));
    } catch (const std::exception&) {
      throw input_error("gfp matroid: bad prime in '" + spec + "'");
    }
    json cols = json::array();
    std::stringstream ss(rest.substr(second + 1));
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      json col = json::array();
      for (char c : tok) {
        if (c < '0' || c > '9') throw input_error("gfp matroid: bad column '" + tok + "'");
        col.push_back(c - '0');
      }
      cols.push_back(col);
    }
    return json{{"gfp", {{"p", p}, {"cols", cols}}}};
  }
  if (kind == "file") return load_json_file(rest);
  throw input_error("unknown matroid spec '" + spec + "'");
}

inline GeometricLattice matroid_from_json(const json& j) {
  if (!j.is_object()) throw input_error("matroid: expected a JSON object");
  if (j.contains("builtin")) {
    if (j["builtin"] == "fano") return fano_matroid();
    throw input_error("unknown builtin matroid");
  }
  if (j.contains("uniform")) {
    const auto& u = j["uniform"];
    return uniform_matroid(json_int(u.at("r"), "uniform r"), json_int(u.at("n"), "uniform n"));
  }
  if (j.contains("gfp")) {
    const auto& g = j["gfp"];
    std::vector<std::vector<int>> cols;
    for (const auto& c : g.at("cols")) {
      std::vector<int> col;
      for (const auto& e : c) col.push_back(json_int(e, "gfp column entry"));
      cols.push_back(col);
    }
    return matroid_from_gfp_columns(json_int(g.at("p"), "gfp prime"), cols);
  }
  if (j.contains("ground") && j.contains("flats")) {
    std::vector<int> ground = json_int_set(j["ground"], "ground set");
    std::vector<std::vector<int>> flats;
    for (const auto& f : j["flats"]) flats.push_back(json_int_set(f, "flat"));
    return GeometricLattice(ground, flats);
  }
  throw input_error("matroid: need one of builtin/uniform/gfp or ground+flats");
}

// ---------------------------------------------------------------------------
// Space specs.

inline json space_spec_to_json(const std::string& spec) {
  if (spec.rfind("file:", 0) == 0) return load_json_file(spec.substr(5));
  return json{{"standard", spec}};
}

inline SimplicialComplex space_from_json(const json& j) {
  if (!j.is_object()) throw input_error("space: expected a JSON object");
  if (j.contains("standard")) {
    if (!j["standard"].is_string()) throw input_error("space: 'standard' must be a string");
    return standard_space(j["standard"].get<std::string>());
  }
  if (j.contains("vertices") && j.contains("facets")) {
    std::vector<std::string> vertices;
    for (const auto& v : j["vertices"]) {
      if (v.is_string())
        vertices.push_back(v.get<std::string>());
      else if (v.is_number_integer())
        vertices.push_back(std::to_string(v.get<long long>()));
      else
        throw input_error("space: vertex labels must be strings or integers");
    }
    std::vector<std::vector<std::string>> facets;
    for (const auto& f : j["facets"]) {
      std::vector<std::string> facet;
      for (const auto& v : f) {
        if (v.is_string())
          facet.push_back(v.get<std::string>());
        else if (v.is_number_integer())
          facet.push_back(std::to_string(v.get<long long>()));
        else
          throw input_error("space: facet entries must be strings or integers");
      }
      facets.push_back(facet);
    }
    return SimplicialComplex(vertices, facets);
  }
  throw input_error("space: need 'standard' or vertices+facets");
}

// ---------------------------------------------------------------------------
// Label-map specs.  Command line: "default" or "flag:[[],[7],[4,7],[1..7]]"
// where "a..b" expands to the inclusive integer range.

inline json ell_spec_to_json(const std::string& spec) {
  if (spec == "default") return json("default");
  if (spec.rfind("flag:", 0) == 0) {
    std::string body = spec.substr(5);
    static const std::regex range_re(R"((-?\d+)\.\.(-?\d+))");
    std::smatch m;
    std::string expanded;
    auto it = body.cbegin();
    while (std::regex_search(it, body.cend(), m, range_re)) {
      expanded.append(m.prefix().first, m.prefix().second);
      const int lo = std::stoi(m[1]), hi = std::stoi(m[2]);
      if (lo > hi) throw input_error("label map: empty range '" + m.str(0) + "'");
      for (int v = lo; v <= hi; ++v) {
        if (v != lo) expanded += ',';
        expanded += std::to_string(v);
      }
      it = m.suffix().first;
    }
    expanded.append(it, body.cend());
    json flag;
    try {
      flag = json::parse(expanded);
    } catch (const json::exception& e) {
      throw input_error("label map: cannot parse flag '" + body + "': " + e.what());
    }
    if (!flag.is_array()) throw input_error("label map: flag must be a list of sets");
    return json{{"flag", flag}};
  }
  throw input_error("unknown label-map spec '" + spec + "' (want 'default' or 'flag:[...]')");
}

inline EllMap ell_from_json(const GeometricLattice& M, const json& j) {
  if (j.is_string() && j == "default") return ell_default(M);
  if (j.is_object() && j.contains("flag")) {
    std::vector<std::vector<int>> flag_sets;
    for (const auto& s : j["flag"]) flag_sets.push_back(json_int_set(s, "flag element"));
    return ell_flag(M, flag_sets);
  }
  throw input_error("label map: need \"default\" or {\"flag\":[...]}");
}

// ---------------------------------------------------------------------------
// Arrangement files: the full cell list of Y plus enough configuration to
// rebuild and cross-check it.

inline json arrangement_json(const Arrangement& arr, const json& matroid_spec,
                             const json& space_spec, const json& ell_spec) {
  const PrismComplex& Y = arr.Y();
  const SimplicialComplex& u = arr.built.union_complex;
  json cells = json::array();
  for (int c = 0; c < Y.n_cells(); ++c) {
    json chain = json::array();
    for (int node : Y.cell_chain(c)) chain.push_back(arr.M.flat_id(node));
    json simplex = json::array();
    for (const auto& lab : u.labels_of(u.simplices()[Y.cell_host(c)])) simplex.push_back(lab);
    cells.push_back(json{{"chain", chain}, {"simplex", simplex}, {"dim", Y.cw().dims[c]}});
  }
  return json{{"format", "arrangement"}, {"matroid", matroid_spec}, {"space", space_spec},
              {"ell", ell_spec},         {"lattice", poset_json(arr.M.poset())},
              {"cells", cells}};
}

// Map the stored cells of an arrangement file onto a freshly rebuilt Y.
// Returns the stored cells as a subset of the rebuilt complex's cell ids;
// unknown chains, simplices, or cells are input errors.
inline CellSet stored_cells_in(const Arrangement& arr, const json& file) {
  if (!file.contains("cells") || !file["cells"].is_array())
    throw input_error("arrangement file: missing 'cells' array");
  const SimplicialComplex& u = arr.built.union_complex;
  std::map<std::vector<std::string>, int> ambient_by_labels;
  for (int i = 0; i < static_cast<int>(u.simplices().size()); ++i) {
    auto labels = u.labels_of(u.simplices()[i]);
    std::sort(labels.begin(), labels.end());
    ambient_by_labels[labels] = i;
  }
  CellSet out;
  for (const auto& cell : file["cells"]) {
    std::vector<int> chain;
    for (const auto& id : cell.at("chain")) {
      if (!id.is_string()) throw input_error("arrangement file: chain entries must be flat ids");
      chain.push_back(arr.M.index_of(parse_set_id(id.get<std::string>())));
    }
    std::vector<std::string> labels;
    for (const auto& l : cell.at("simplex")) {
      if (!l.is_string()) throw input_error("arrangement file: simplex entries must be labels");
      labels.push_back(l.get<std::string>());
    }
    std::sort(labels.begin(), labels.end());
    auto host = ambient_by_labels.find(labels);
    if (host == ambient_by_labels.end())
      throw input_error("arrangement file: unknown simplex in cell");
    const std::string key = PrismComplex::cell_key(arr.Y().diagram(), chain, host->second);
    auto it = arr.Y().cw().index.find(key);
    if (it == arr.Y().cw().index.end())
      throw input_error("arrangement file: cell '" + key + "' does not belong to this arrangement");
    const int id = it->second;
    const int want_dim = json_int(cell.at("dim"), "cell dim");
    if (arr.Y().cw().dims[id] != want_dim)
      throw input_error("arrangement file: cell '" + key + "' has wrong dimension");
    out.push_back(id);
  }
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end())
    throw input_error("arrangement file: duplicate cell");
  return out;
}

// ---------------------------------------------------------------------------
// Matchings.

inline json matching_json(const CwComplex& cw, const Matching& m, const std::vector<int>& critical) {
  std::vector<std::pair<std::string, std::string>> arrows;
  for (const auto& [up, down] : m.pairs) arrows.emplace_back(cw.keys[up], cw.keys[down]);
  std::sort(arrows.begin(), arrows.end());
  json ja = json::array();
  for (const auto& [up, down] : arrows) ja.push_back(json::array({up, down}));
  std::vector<std::string> crit;
  for (int c : critical) crit.push_back(cw.keys[c]);
  std::sort(crit.begin(), crit.end());
  return json{{"arrows", ja}, {"critical", crit}};
}

}  // namespace msl
