#ifndef FLATNORM_IO_HPP
#define FLATNORM_IO_HPP

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "flatnorm/error.hpp"
#include "flatnorm/surface.hpp"

namespace flatnorm::io {

using json = nlohmann::json;

namespace detail {

inline Complex parse_complex(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw FlatError(ErrorCode::ParseError, "complex values are [re, im] pairs");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

inline int parse_index(const std::string& key, int limit, const char* what) {
  std::size_t used = 0;
  int v = -1;
  try {
    v = std::stoi(key, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != key.size() || v < 0 || v >= limit) {
    throw FlatError(ErrorCode::ParseError, std::string("bad ") + what + " key '" + key + "'");
  }
  return v;
}

}  // namespace detail

inline json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

inline Surface surface_from_json(const json& doc) {
  try {
    if (!doc.is_object()) throw FlatError(ErrorCode::ParseError, "surface document must be an object");
    const std::string kind_s = doc.at("kind").get<std::string>();
    SurfaceKind kind;
    if (kind_s == "translation") {
      kind = SurfaceKind::translation;
    } else if (kind_s == "half-translation") {
      kind = SurfaceKind::half_translation;
    } else {
      throw FlatError(ErrorCode::ParseError, "unknown kind '" + kind_s + "'");
    }
    std::vector<Triangle> triangles;
    for (const auto& t : doc.at("triangles")) {
      if (!t.is_array() || t.size() != 3) {
        throw FlatError(ErrorCode::NonTriangleFace, "every face must list exactly three half-edges");
      }
      triangles.push_back({t[0].get<int>(), t[1].get<int>(), t[2].get<int>()});
    }
    std::vector<EdgePair> pairs;
    for (const auto& p : doc.at("opposite")) {
      if (!p.is_array() || p.size() != 2) throw FlatError(ErrorCode::UnpairedHalfEdge, "pairings have two entries");
      pairs.push_back({p[0].get<int>(), p[1].get<int>()});
    }
    const int n = static_cast<int>(triangles.size()) * 3;
    std::vector<Complex> vectors(n);
    std::vector<char> have(n, 0);
    for (const auto& [key, value] : doc.at("vectors").items()) {
      const int h = detail::parse_index(key, n, "vector");
      vectors[h] = detail::parse_complex(value);
      have[h] = 1;
    }
    for (int h = 0; h < n; ++h) {
      if (!have[h]) throw FlatError(ErrorCode::ParseError, "missing vector for half-edge " + std::to_string(h));
    }
    std::vector<int> signs;
    if (doc.contains("signs")) {
      signs.assign(pairs.size(), 1);
      for (const auto& [key, value] : doc.at("signs").items()) {
        signs[detail::parse_index(key, static_cast<int>(pairs.size()), "sign")] = value.get<int>();
      }
    }
    return Surface::build(kind, triangles, pairs, vectors, signs);
  } catch (const json::exception& e) {
    throw FlatError(ErrorCode::ParseError, e.what());
  }
}

inline json surface_to_json(const Surface& s) {
  const auto& m = s.map();
  json doc;
  doc["kind"] = s.is_translation() ? "translation" : "half-translation";
  json tris = json::array();
  for (int f = 0; f < m.num_faces(); ++f) {
    const auto t = m.triangle(f);
    tris.push_back({t[0], t[1], t[2]});
  }
  doc["triangles"] = std::move(tris);
  json opp = json::array();
  for (int e = 0; e < m.num_edges(); ++e) {
    const int h = m.edge_half_edge(e);
    opp.push_back({h, m.opp(h)});
  }
  doc["opposite"] = std::move(opp);
  json vecs = json::object();
  for (int h = 0; h < m.size(); ++h) vecs[std::to_string(h)] = complex_to_json(s.vec(h));
  doc["vectors"] = std::move(vecs);
  if (!s.is_translation()) {
    json signs = json::object();
    for (int e = 0; e < m.num_edges(); ++e) signs[std::to_string(e)] = s.sign(e);
    doc["signs"] = std::move(signs);
  }
  return doc;
}

inline Cochain cochain_from_json(const json& doc, int num_half_edges) {
  try {
    Cochain c;
    c.values.assign(num_half_edges, Complex(0.0, 0.0));
    std::vector<char> have(num_half_edges, 0);
    for (const auto& [key, value] : doc.at("values").items()) {
      const int h = detail::parse_index(key, num_half_edges, "cochain");
      c.values[h] = detail::parse_complex(value);
      have[h] = 1;
    }
    for (int h = 0; h < num_half_edges; ++h) {
      if (!have[h]) throw FlatError(ErrorCode::CochainMismatch, "cochain misses half-edge " + std::to_string(h));
    }
    return c;
  } catch (const json::exception& e) {
    throw FlatError(ErrorCode::ParseError, e.what());
  }
}

inline json cochain_to_json(const Cochain& c) {
  json values = json::object();
  for (std::size_t h = 0; h < c.values.size(); ++h) values[std::to_string(h)] = complex_to_json(c.values[h]);
  return json{{"values", std::move(values)}};
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FlatError(ErrorCode::ParseError, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw FlatError(ErrorCode::ParseError, path + ": " + e.what());
  }
}

inline void write_json_file(const std::string& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw FlatError(ErrorCode::ParseError, "cannot write " + path);
  out << doc.dump(2) << '\n';
}

}  // namespace flatnorm::io

#endif  // FLATNORM_IO_HPP
