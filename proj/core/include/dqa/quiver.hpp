#pragma once

#include <map>
#include <string>
#include <vector>

#include "dqa/field.hpp"

namespace dqa {

struct Arrow {
  std::string id;
  int src = 0;
  int tgt = 0;
  int vdeg = 0;
};

// Finite quiver over a session field. Arrows compose right to left:
// b: i -> j followed by a: j -> k is the path "ab".
struct Quiver {
  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;
  bool has_vdeg = false;
  FieldSpec field;

  int vertex_index(const std::string& name) const;
  int arrow_index(const std::string& id) const;
  int n_vertices() const { return static_cast<int>(vertices.size()); }
  int n_arrows() const { return static_cast<int>(arrows.size()); }

  void validate() const;

  static Quiver from_json(const std::string& text);
  std::string to_json() const;
};

// A path stored in tensor order: arrows[0] is the leftmost factor, i.e. the
// last arrow applied. A trivial path holds just its vertex.
struct Path {
  int vertex = -1;             // source vertex for trivial paths
  std::vector<int> arrows;     // arrow indices, tensor order

  int length() const { return static_cast<int>(arrows.size()); }
  bool trivial() const { return arrows.empty(); }

  friend bool operator==(const Path& a, const Path& b) {
    if (a.arrows.empty() != b.arrows.empty()) return false;
    if (a.arrows.empty()) return a.vertex == b.vertex;
    return a.arrows == b.arrows;
  }
  friend bool operator<(const Path& a, const Path& b) {
    if (a.arrows.size() != b.arrows.size())
      return a.arrows.size() < b.arrows.size();
    if (a.arrows.empty()) return a.vertex < b.vertex;
    return a.arrows < b.arrows;
  }
};

inline Path trivial_path(int v) { return Path{v, {}}; }

int path_source(const Quiver& q, const Path& p);
int path_target(const Quiver& q, const Path& p);
int path_vdeg(const Quiver& q, const Path& p);
bool path_composable(const Quiver& q, const std::vector<int>& arrows);
std::string path_str(const Quiver& q, const Path& p);

// p tensor q (p to the left of q); invalid composition reported by
// returning false.
bool path_concat(const Quiver& q, const Path& a, const Path& b, Path* out);

// All paths of the given length, sorted. Lengths are memoized per quiver in
// a caller-owned table.
struct PathTable {
  const Quiver* q = nullptr;
  std::vector<std::vector<Path>> by_len;
  std::vector<std::map<Path, int>> index;

  explicit PathTable(const Quiver& quiver) : q(&quiver) {}
  const std::vector<Path>& paths(int len);
  int path_index(const Path& p);
};

}  // namespace dqa
