#pragma once

#include <Eigen/Core>

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "quivex/error.hpp"
#include "quivex/ivec.hpp"

namespace quivex {

using IMat = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;

/// Euler matrix E (with <d,e> = d^T E e) and the symmetric Cartan matrix
/// C = E + E^T of a quiver.
struct FormMatrices {
  IMat euler;
  IMat cartan;
};

/// A finite acyclic directed multigraph. Vertices carry arbitrary string
/// identifiers; internally everything is indexed by the canonical
/// topological order (sources first, ties broken lexicographically), which
/// fixes the coordinate order of all dimension vectors and matrices.
class Quiver {
 public:
  using RawArrow = std::tuple<std::string, std::string, long long>;

  /// Validates a raw description: distinct vertex ids, declared endpoints,
  /// positive multiplicities, no oriented cycles (loops included).
  static Quiver validate(const std::vector<std::string>& vertices,
                         const std::vector<RawArrow>& arrows) {
    if (vertices.empty()) fail(errc::malformed_input, "quiver has no vertices");
    std::map<std::string, int> declared;
    for (const auto& v : vertices) {
      if (v.empty()) fail(errc::malformed_input, "empty vertex identifier");
      if (!declared.emplace(v, 0).second)
        fail(errc::malformed_input, "duplicate vertex id '" + v + "'");
    }
    std::map<std::pair<std::string, std::string>, long long> mult;
    for (const auto& [src, tgt, k] : arrows) {
      if (!declared.count(src))
        fail(errc::malformed_input, "arrow source '" + src + "' is not a declared vertex");
      if (!declared.count(tgt))
        fail(errc::malformed_input, "arrow target '" + tgt + "' is not a declared vertex");
      if (k < 1) fail(errc::malformed_input, "arrow multiplicity must be >= 1");
      if (src == tgt) fail(errc::cyclic_quiver, "loop at vertex '" + src + "'");
      mult[{src, tgt}] = checked_add(mult[{src, tgt}], k);
    }

    // Canonical topological order: Kahn's algorithm, always picking the
    // lexicographically smallest available vertex.
    std::map<std::string, int> indeg;
    std::map<std::string, std::vector<std::string>> out;
    for (const auto& v : vertices) indeg[v] = 0;
    for (const auto& [pair, k] : mult) {
      (void)k;
      out[pair.first].push_back(pair.second);
      indeg[pair.second] += 1;
    }
    std::set<std::string> ready;
    for (const auto& [v, deg] : indeg)
      if (deg == 0) ready.insert(v);
    std::vector<std::string> order;
    while (!ready.empty()) {
      const std::string v = *ready.begin();
      ready.erase(ready.begin());
      order.push_back(v);
      for (const auto& w : out[v])
        if (--indeg[w] == 0) ready.insert(w);
    }
    if (order.size() != vertices.size())
      fail(errc::cyclic_quiver, "quiver contains an oriented cycle");

    Quiver q;
    q.ids_ = std::move(order);
    for (int i = 0; i < static_cast<int>(q.ids_.size()); ++i) q.index_[q.ids_[i]] = i;
    const int n = q.size();
    q.adj_ = IMat::Zero(n, n);
    for (const auto& [pair, k] : mult)
      q.adj_(q.index_.at(pair.first), q.index_.at(pair.second)) = k;
    q.euler_ = IMat::Identity(n, n) - q.adj_;
    q.cartan_ = q.euler_ + q.euler_.transpose();
    for (const auto& [pair, k] : mult) {
      for (long long c = 0; c < k; ++c)
        q.arrow_list_.emplace_back(q.index_.at(pair.first), q.index_.at(pair.second));
    }
    std::sort(q.arrow_list_.begin(), q.arrow_list_.end());
    return q;
  }

  /// Text format, one directive per line:
  ///   vertices: 1 2 3
  ///   arrow: 1 2 x3     (x3 = multiplicity, defaults to 1)
  /// Blank lines and lines starting with '#' are ignored.
  static Quiver from_text(const std::string& text) {
    std::vector<std::string> vertices;
    std::vector<RawArrow> arrows;
    bool saw_vertices = false;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      std::istringstream ls(line);
      std::string head;
      if (!(ls >> head) || head[0] == '#') continue;
      if (head == "vertices:") {
        if (saw_vertices) fail(errc::malformed_input, "repeated 'vertices:' line");
        saw_vertices = true;
        std::string v;
        while (ls >> v) vertices.push_back(v);
      } else if (head == "arrow:") {
        std::string src, tgt, rest;
        if (!(ls >> src >> tgt)) fail(errc::malformed_input, "arrow line needs source and target");
        long long k = 1;
        if (ls >> rest) {
          if (rest.size() < 2 || rest[0] != 'x')
            fail(errc::malformed_input, "bad multiplicity token '" + rest + "'");
          try {
            k = std::stoll(rest.substr(1));
          } catch (const std::exception&) {
            fail(errc::malformed_input, "bad multiplicity token '" + rest + "'");
          }
        }
        arrows.emplace_back(src, tgt, k);
      } else {
        fail(errc::malformed_input, "unknown directive '" + head + "'");
      }
    }
    if (!saw_vertices) fail(errc::malformed_input, "missing 'vertices:' line");
    return validate(vertices, arrows);
  }

  /// JSON format: {"vertices": ["1","2"], "arrows": [["1","2",3], ...]}.
  /// Vertex entries may also be numbers; the arrow multiplicity is optional.
  static Quiver from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("vertices") || !j.contains("arrows"))
      fail(errc::malformed_input, "quiver JSON needs 'vertices' and 'arrows'");
    auto as_id = [](const nlohmann::json& v) -> std::string {
      if (v.is_string()) return v.get<std::string>();
      if (v.is_number_integer()) return std::to_string(v.get<long long>());
      fail(errc::malformed_input, "vertex id must be a string or integer");
    };
    std::vector<std::string> vertices;
    for (const auto& v : j.at("vertices")) vertices.push_back(as_id(v));
    std::vector<RawArrow> arrows;
    for (const auto& a : j.at("arrows")) {
      if (!a.is_array() || a.size() < 2 || a.size() > 3)
        fail(errc::malformed_input, "arrow entry must be [src, tgt] or [src, tgt, mult]");
      long long k = a.size() == 3 ? a.at(2).get<long long>() : 1;
      arrows.emplace_back(as_id(a.at(0)), as_id(a.at(1)), k);
    }
    return validate(vertices, arrows);
  }

  static Quiver parse(const std::string& text) {
    for (char c : text) {
      if (std::isspace(static_cast<unsigned char>(c))) continue;
      if (c == '{') return from_json(nlohmann::json::parse(text));
      break;
    }
    return from_text(text);
  }

  static Quiver load(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) fail(errc::malformed_input, "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << f.rdbuf();
    return parse(buf.str());
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["vertices"] = ids_;
    auto arrows = nlohmann::json::array();
    for (int i = 0; i < size(); ++i)
      for (int k = 0; k < size(); ++k)
        if (adj_(i, k) > 0) arrows.push_back({ids_[i], ids_[k], adj_(i, k)});
    j["arrows"] = std::move(arrows);
    return j;
  }

  int size() const { return static_cast<int>(ids_.size()); }
  const std::vector<std::string>& vertex_ids() const { return ids_; }

  int index_of(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) fail(errc::malformed_input, "unknown vertex '" + id + "'");
    return it->second;
  }

  long long arrow_count(int i, int j) const { return adj_(i, j); }

  /// All arrows, multiplicities expanded, sorted by (source, target) index.
  const std::vector<std::pair<int, int>>& arrow_list() const { return arrow_list_; }

  const IMat& arrow_matrix() const { return adj_; }
  const IMat& euler_matrix() const { return euler_; }
  const IMat& cartan_matrix() const { return cartan_; }
  FormMatrices forms() const { return {euler_, cartan_}; }

  Quiver opposite() const {
    std::vector<RawArrow> arrows;
    for (int i = 0; i < size(); ++i)
      for (int j = 0; j < size(); ++j)
        if (adj_(i, j) > 0) arrows.emplace_back(ids_[j], ids_[i], adj_(i, j));
    return validate(ids_, arrows);
  }

  /// Connected components of the underlying undirected graph, each a sorted
  /// list of canonical vertex indices; components ordered by smallest index.
  std::vector<std::vector<int>> components() const {
    const int n = size();
    std::vector<int> comp(n, -1);
    int ncomp = 0;
    for (int s = 0; s < n; ++s) {
      if (comp[s] != -1) continue;
      std::vector<int> stack{s};
      comp[s] = ncomp;
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w = 0; w < n; ++w) {
          if (comp[w] == -1 && (adj_(v, w) > 0 || adj_(w, v) > 0)) {
            comp[w] = ncomp;
            stack.push_back(w);
          }
        }
      }
      ++ncomp;
    }
    std::vector<std::vector<int>> out(ncomp);
    for (int v = 0; v < n; ++v) out[comp[v]].push_back(v);
    return out;
  }

  bool is_connected() const { return components().size() == 1; }

  /// Coordinate vector of a single vertex.
  IVec unit_vector(int i) const {
    IVec v(size(), 0);
    v[i] = 1;
    return v;
  }

 private:
  Quiver() = default;

  std::vector<std::string> ids_;
  std::map<std::string, int> index_;
  std::vector<std::pair<int, int>> arrow_list_;
  IMat adj_, euler_, cartan_;
};

}  // namespace quivex
