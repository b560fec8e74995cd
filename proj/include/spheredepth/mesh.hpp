#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <fstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "error.hpp"
#include "vec3.hpp"

namespace spheredepth {

// Construction above this level is rejected; the resolution table tops out at
// spherical resolution 8 and memory grows 4x per level.
inline constexpr int kMaxMeshLevel = 8;

constexpr std::int64_t pow4(int e) { return std::int64_t{1} << (2 * e); }
constexpr std::int64_t face_count(int level) { return 20 * pow4(level); }
constexpr std::int64_t vertex_count(int level) { return 10 * pow4(level) + 2; }
constexpr std::int64_t edge_count(int level) { return 30 * pow4(level); }

// Icosahedron subdivided `level` times, vertices on the unit sphere.
//
// Faces are counterclockwise seen from outside. Neighbor slot k of face
// (v0,v1,v2) is the face across edge (v_k, v_{(k+1)%3}); adjacency_back[f][k]
// is the slot under which face f appears in that neighbor's adjacency.
struct SphericalMesh {
  int level = 0;
  std::vector<Vec3> vertices;
  std::vector<std::array<std::int32_t, 3>> faces;
  std::vector<Vec3> face_centers;
  std::vector<std::array<std::int32_t, 3>> adjacency;
  std::vector<std::array<std::uint8_t, 3>> adjacency_back;
  std::vector<std::int32_t> parent;  // empty at level 0

  // Children in the next-finer mesh; valid once that mesh has been built.
  // Child order: corner-v0, corner-v1, corner-v2, center.
  std::array<std::int32_t, 4> children_of(std::int32_t f) const {
    return {4 * f, 4 * f + 1, 4 * f + 2, 4 * f + 3};
  }
};

namespace detail {

inline void finalize_topology(SphericalMesh& mesh) {
  const std::int64_t nf = static_cast<std::int64_t>(mesh.faces.size());
  mesh.face_centers.resize(nf);
  for (std::int64_t f = 0; f < nf; ++f) {
    const auto& tri = mesh.faces[f];
    Vec3 c = mesh.vertices[tri[0]] + mesh.vertices[tri[1]] + mesh.vertices[tri[2]];
    mesh.face_centers[f] = c.normalized();
  }

  // Undirected edge -> the (face, slot) pairs that use it. A closed manifold
  // gives exactly two users per edge.
  std::unordered_map<std::uint64_t, std::array<std::int64_t, 2>> edge_users;
  edge_users.reserve(static_cast<std::size_t>(nf) * 3 / 2);
  auto edge_key = [](std::int32_t a, std::int32_t b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
  };
  for (std::int64_t f = 0; f < nf; ++f) {
    for (int k = 0; k < 3; ++k) {
      std::uint64_t key = edge_key(mesh.faces[f][k], mesh.faces[f][(k + 1) % 3]);
      auto [it, inserted] = edge_users.try_emplace(key, std::array<std::int64_t, 2>{-1, -1});
      auto& slots = it->second;
      if (slots[0] < 0) {
        slots[0] = f * 3 + k;
      } else if (slots[1] < 0) {
        slots[1] = f * 3 + k;
      } else {
        throw Error("mesh topology: edge shared by more than two faces");
      }
      (void)inserted;
    }
  }

  mesh.adjacency.assign(nf, {-1, -1, -1});
  mesh.adjacency_back.assign(nf, {0, 0, 0});
  for (const auto& [key, users] : edge_users) {
    (void)key;
    if (users[1] < 0) throw Error("mesh topology: boundary edge in closed mesh");
    std::int32_t f0 = static_cast<std::int32_t>(users[0] / 3);
    int k0 = static_cast<int>(users[0] % 3);
    std::int32_t f1 = static_cast<std::int32_t>(users[1] / 3);
    int k1 = static_cast<int>(users[1] % 3);
    mesh.adjacency[f0][k0] = f1;
    mesh.adjacency[f1][k1] = f0;
    mesh.adjacency_back[f0][k0] = static_cast<std::uint8_t>(k1);
    mesh.adjacency_back[f1][k1] = static_cast<std::uint8_t>(k0);
  }
}

}  // namespace detail

inline SphericalMesh build_icosahedron() {
  SphericalMesh mesh;
  mesh.level = 0;

  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  const Vec3 raw[12] = {
      {-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0},
      {0, -1, t}, {0, 1, t}, {0, -1, -t}, {0, 1, -t},
      {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1},
  };
  mesh.vertices.reserve(12);
  for (const Vec3& v : raw) mesh.vertices.push_back(v.normalized());

  mesh.faces = {
      {0, 11, 5},  {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
      {1, 5, 9},   {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
      {3, 9, 4},   {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
      {4, 9, 5},   {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1},
  };

  detail::finalize_topology(mesh);
  return mesh;
}

// Midpoint subdivision with re-projection to the unit sphere. Original
// vertices keep their index; midpoints are deduplicated by vertex-index pair,
// never by position. Each face (a,b,c) produces children in the fixed order
//   (a, ab, ac), (b, bc, ab), (c, ac, bc), (bc, ac, ab)
// i.e. the corner-a/corner-b/corner-c/center split, with vertex order chosen
// so every child stays counterclockwise.
inline SphericalMesh subdivide(const SphericalMesh& mesh) {
  if (mesh.level >= kMaxMeshLevel) {
    throw Error("subdivide: level " + std::to_string(mesh.level + 1) +
                " exceeds the supported maximum of " + std::to_string(kMaxMeshLevel));
  }

  SphericalMesh out;
  out.level = mesh.level + 1;
  out.vertices = mesh.vertices;
  out.vertices.reserve(static_cast<std::size_t>(vertex_count(out.level)));
  out.faces.reserve(static_cast<std::size_t>(face_count(out.level)));
  out.parent.reserve(static_cast<std::size_t>(face_count(out.level)));

  std::unordered_map<std::uint64_t, std::int32_t> midpoint;
  midpoint.reserve(static_cast<std::size_t>(edge_count(mesh.level)));
  auto mid = [&](std::int32_t a, std::int32_t b) {
    std::int32_t lo = std::min(a, b), hi = std::max(a, b);
    std::uint64_t key = (static_cast<std::uint64_t>(lo) << 32) | static_cast<std::uint32_t>(hi);
    auto it = midpoint.find(key);
    if (it != midpoint.end()) return it->second;
    std::int32_t idx = static_cast<std::int32_t>(out.vertices.size());
    out.vertices.push_back(midpoint_on_sphere(mesh.vertices[a], mesh.vertices[b]));
    midpoint.emplace(key, idx);
    return idx;
  };

  for (std::int64_t f = 0; f < static_cast<std::int64_t>(mesh.faces.size()); ++f) {
    const auto [a, b, c] = mesh.faces[f];
    std::int32_t ab = mid(a, b);
    std::int32_t bc = mid(b, c);
    std::int32_t ac = mid(a, c);
    out.faces.push_back({a, ab, ac});
    out.faces.push_back({b, bc, ab});
    out.faces.push_back({c, ac, bc});
    out.faces.push_back({bc, ac, ab});
    for (int i = 0; i < 4; ++i) out.parent.push_back(static_cast<std::int32_t>(f));
  }

  detail::finalize_topology(out);
  return out;
}

// Meshes for levels 0..max_level; immutable after construction.
struct MeshHierarchy {
  std::vector<SphericalMesh> levels;

  const SphericalMesh& at(int level) const {
    if (level < 0 || level >= static_cast<int>(levels.size())) {
      throw Error("mesh hierarchy: level " + std::to_string(level) + " not built");
    }
    return levels[static_cast<std::size_t>(level)];
  }
  int max_level() const { return static_cast<int>(levels.size()) - 1; }
};

inline MeshHierarchy build_hierarchy(int max_level) {
  if (max_level < 0 || max_level > kMaxMeshLevel) {
    throw Error("build_hierarchy: level must be in [0, " + std::to_string(kMaxMeshLevel) + "]");
  }
  MeshHierarchy h;
  h.levels.push_back(build_icosahedron());
  for (int l = 1; l <= max_level; ++l) h.levels.push_back(subdivide(h.levels.back()));
  return h;
}

// The 4^tr sample directions per face: sub-triangle centers after tr local
// subdivisions of the face, re-projected to the sphere, in the same
// depth-first child order as subdivide. Sample s of face f equals the face
// center of descendant 4^tr*f + s in the level+tr mesh.
struct SamplePattern {
  int tr = 0;
  int level = 0;
  std::vector<Vec3> offsets;  // face-major, samples_per_face() per face

  std::int64_t samples_per_face() const { return pow4(tr); }
  const Vec3& offset(std::int64_t face, std::int64_t sample) const {
    return offsets[static_cast<std::size_t>(face * samples_per_face() + sample)];
  }
};

namespace detail {

inline void emit_samples(const Vec3& a, const Vec3& b, const Vec3& c, int depth,
                         std::vector<Vec3>& out) {
  if (depth == 0) {
    out.push_back((a + b + c).normalized());
    return;
  }
  Vec3 ab = midpoint_on_sphere(a, b);
  Vec3 bc = midpoint_on_sphere(b, c);
  Vec3 ac = midpoint_on_sphere(a, c);
  emit_samples(a, ab, ac, depth - 1, out);
  emit_samples(b, bc, ab, depth - 1, out);
  emit_samples(c, ac, bc, depth - 1, out);
  emit_samples(bc, ac, ab, depth - 1, out);
}

}  // namespace detail

inline SamplePattern sample_pattern(const SphericalMesh& mesh, int tr) {
  if (tr < 0) throw Error("sample_pattern: tr must be non-negative");
  SamplePattern pat;
  pat.tr = tr;
  pat.level = mesh.level;
  pat.offsets.reserve(static_cast<std::size_t>(face_count(mesh.level) * pow4(tr)));
  for (const auto& tri : mesh.faces) {
    detail::emit_samples(mesh.vertices[tri[0]], mesh.vertices[tri[1]], mesh.vertices[tri[2]],
                         tr, pat.offsets);
  }
  return pat;
}

// Sum of planar triangle areas over the sphere area 4*pi. Approaches 1 from
// below as the level grows.
inline double surface_area_ratio(const SphericalMesh& mesh) {
  double area = 0.0;
  for (const auto& tri : mesh.faces) {
    const Vec3& a = mesh.vertices[tri[0]];
    const Vec3& b = mesh.vertices[tri[1]];
    const Vec3& c = mesh.vertices[tri[2]];
    area += 0.5 * (b - a).cross(c - a).norm();
  }
  return area / (4.0 * 3.14159265358979323846);
}

// Debug dump for external viewers.
inline void write_mesh_ply(const SphericalMesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << "ply\nformat ascii 1.0\n";
  out << "element vertex " << mesh.vertices.size() << "\n";
  out << "property float x\nproperty float y\nproperty float z\n";
  out << "element face " << mesh.faces.size() << "\n";
  out << "property list uchar int vertex_indices\nend_header\n";
  for (const Vec3& v : mesh.vertices) out << v.x << " " << v.y << " " << v.z << "\n";
  for (const auto& f : mesh.faces) out << "3 " << f[0] << " " << f[1] << " " << f[2] << "\n";
  if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace spheredepth
