#include "dqa/quiver.hpp"

#include <nlohmann/json.hpp>

#include <set>
#include <sstream>
#include <stdexcept>

namespace dqa {

using nlohmann::json;

int Quiver::vertex_index(const std::string& name) const {
  for (size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i] == name) return static_cast<int>(i);
  throw std::invalid_argument("unknown vertex: " + name);
}

int Quiver::arrow_index(const std::string& id) const {
  for (size_t i = 0; i < arrows.size(); ++i)
    if (arrows[i].id == id) return static_cast<int>(i);
  throw std::invalid_argument("unknown arrow: " + id);
}

void Quiver::validate() const {
  std::set<std::string> seen;
  for (const auto& v : vertices)
    if (!seen.insert(v).second)
      throw std::invalid_argument("duplicate vertex: " + v);
  seen.clear();
  for (const auto& a : arrows) {
    if (!seen.insert(a.id).second)
      throw std::invalid_argument("duplicate arrow id: " + a.id);
    if (a.src < 0 || a.src >= n_vertices() || a.tgt < 0 ||
        a.tgt >= n_vertices())
      throw std::invalid_argument("arrow endpoints out of range: " + a.id);
    if (has_vdeg && a.vdeg != 0 && a.vdeg != 1)
      throw std::invalid_argument("arrow vdeg must be 0 or 1: " + a.id);
  }
}

Quiver Quiver::from_json(const std::string& text) {
  json j = json::parse(text);
  Quiver q;
  for (const auto& v : j.at("vertices")) q.vertices.push_back(v.get<std::string>());
  for (const auto& a : j.at("arrows")) {
    Arrow ar;
    ar.id = a.at("id").get<std::string>();
    ar.src = q.vertex_index(a.at("from").get<std::string>());
    ar.tgt = q.vertex_index(a.at("to").get<std::string>());
    if (a.contains("vdeg")) {
      ar.vdeg = a.at("vdeg").get<int>();
      q.has_vdeg = true;
    }
    q.arrows.push_back(ar);
  }
  if (j.contains("field")) {
    const auto& f = j.at("field");
    std::string kind = f.at("kind").get<std::string>();
    if (kind == "Q") {
      q.field.kind = FieldSpec::Kind::Q;
    } else if (kind == "Fp") {
      q.field.kind = FieldSpec::Kind::Fp;
      q.field.p = f.at("p").get<std::uint64_t>();
      if (q.field.p < 2) throw std::invalid_argument("field p must be >= 2");
    } else {
      throw std::invalid_argument("unknown field kind: " + kind);
    }
  }
  q.validate();
  return q;
}

std::string Quiver::to_json() const {
  json j;
  j["vertices"] = vertices;
  j["arrows"] = json::array();
  for (const auto& a : arrows) {
    json ja;
    ja["id"] = a.id;
    ja["from"] = vertices[a.src];
    ja["to"] = vertices[a.tgt];
    if (has_vdeg) ja["vdeg"] = a.vdeg;
    j["arrows"].push_back(ja);
  }
  if (field.kind == FieldSpec::Kind::Q) {
    j["field"] = {{"kind", "Q"}};
  } else {
    j["field"] = {{"kind", "Fp"}, {"p", field.p}};
  }
  return j.dump();
}

int path_source(const Quiver& q, const Path& p) {
  return p.trivial() ? p.vertex : q.arrows[p.arrows.back()].src;
}

int path_target(const Quiver& q, const Path& p) {
  return p.trivial() ? p.vertex : q.arrows[p.arrows.front()].tgt;
}

int path_vdeg(const Quiver& q, const Path& p) {
  int d = 0;
  for (int a : p.arrows) d += q.arrows[a].vdeg;
  return d;
}

bool path_composable(const Quiver& q, const std::vector<int>& arrows) {
  for (size_t i = 0; i + 1 < arrows.size(); ++i)
    if (q.arrows[arrows[i]].src != q.arrows[arrows[i + 1]].tgt) return false;
  return true;
}

std::string path_str(const Quiver& q, const Path& p) {
  if (p.trivial()) return "e_" + q.vertices[p.vertex];
  std::ostringstream os;
  for (size_t i = 0; i < p.arrows.size(); ++i) {
    if (i) os << "*";
    os << q.arrows[p.arrows[i]].id;
  }
  return os.str();
}

bool path_concat(const Quiver& q, const Path& a, const Path& b, Path* out) {
  if (path_source(q, a) != path_target(q, b)) return false;
  if (a.trivial()) {
    *out = b;
    return true;
  }
  if (b.trivial()) {
    *out = a;
    return true;
  }
  Path r;
  r.arrows = a.arrows;
  r.arrows.insert(r.arrows.end(), b.arrows.begin(), b.arrows.end());
  *out = r;
  return true;
}

const std::vector<Path>& PathTable::paths(int len) {
  while (static_cast<int>(by_len.size()) <= len) {
    int n = static_cast<int>(by_len.size());
    std::vector<Path> out;
    if (n == 0) {
      for (int v = 0; v < q->n_vertices(); ++v) out.push_back(trivial_path(v));
    } else {
      // extend on the left, keeping lexicographic order
      for (int a = 0; a < q->n_arrows(); ++a)
        for (const Path& p : by_len[n - 1])
          if (q->arrows[a].src == path_target(*q, p)) {
            Path np;
            np.arrows.reserve(n);
            np.arrows.push_back(a);
            np.arrows.insert(np.arrows.end(), p.arrows.begin(),
                             p.arrows.end());
            out.push_back(std::move(np));
          }
    }
    std::map<Path, int> idx;
    for (size_t i = 0; i < out.size(); ++i) idx[out[i]] = static_cast<int>(i);
    by_len.push_back(std::move(out));
    index.push_back(std::move(idx));
  }
  return by_len[len];
}

int PathTable::path_index(const Path& p) {
  paths(p.length());
  auto it = index[p.length()].find(p);
  return it == index[p.length()].end() ? -1 : it->second;
}

}  // namespace dqa
