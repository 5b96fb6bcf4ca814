#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace latspec {

// Coordinates use the first dim() entries; the rest stay zero.
using Coords = std::array<int, 4>;

struct Edge {
  std::int64_t source = 0;
  int direction = 0;  // 0-based axis
};

struct Plaquette {
  std::int64_t base = 0;
  int mu = 0;
  int nu = 0;  // mu < nu
};

struct PathStep {
  std::int64_t edge = 0;
  bool reverse = false;
};
using DirectedPath = std::vector<PathStep>;

// Periodic hypercubic lattice (Z/nZ)^d scaled by spacing l.
//
// Orderings are fixed: vertices lexicographic in coordinates (first axis
// most significant), edge id = vertex * d + direction, plaquette id =
// vertex * d(d-1)/2 + pair index with (mu, nu) pairs in lexicographic
// order. Serialized data relies on these orders being stable.
class TorusLattice {
 public:
  TorusLattice(int d, int n, double l);

  int dim() const { return d_; }
  int extent() const { return n_; }
  double spacing() const { return l_; }

  std::int64_t vertex_count() const { return volume_; }
  std::int64_t edge_count() const { return volume_ * d_; }
  std::int64_t plaquette_count() const {
    return volume_ * (d_ * (d_ - 1) / 2);
  }

  Coords coords(std::int64_t v) const;
  std::int64_t vertex(Coords c) const;  // reduces coordinates mod n
  std::int64_t neighbor(std::int64_t v, int mu, int step = 1) const;

  std::int64_t edge_index(std::int64_t v, int mu) const {
    return v * d_ + mu;
  }
  Edge edge(std::int64_t e) const;
  std::int64_t edge_target(std::int64_t e) const;

  std::int64_t plaquette_index(std::int64_t v, int mu, int nu) const;
  Plaquette plaquette(std::int64_t p) const;
  // Boundary edges (e1: v->v+mu, e2: v+mu->v+mu+nu, e3: v+nu->v+mu+nu,
  // e4: v->v+nu); the loop convention e4' e3' e2 e1 lives in the action
  // module.
  std::array<std::int64_t, 4> plaquette_edges(std::int64_t p) const;

  // Forward-only path, walking dimension by dimension; empty if from == to.
  DirectedPath directed_path(std::int64_t from, std::int64_t to) const;

  std::vector<Edge> edges() const;
  std::vector<Plaquette> plaquettes() const;

  bool operator==(const TorusLattice& o) const {
    return d_ == o.d_ && n_ == o.n_ && l_ == o.l_;
  }

 private:
  int d_;
  int n_;
  double l_;
  std::int64_t volume_;
};

// Source vertex of a path step (target of the step's edge when reversed).
std::int64_t step_source(const TorusLattice& lat, const PathStep& s);
std::int64_t step_target(const TorusLattice& lat, const PathStep& s);

}  // namespace latspec
