#include "latspec/lattice.hpp"

#include <cmath>
#include <stdexcept>

namespace latspec {

TorusLattice::TorusLattice(int d, int n, double l) : d_(d), n_(n), l_(l) {
  if (d != 2 && d != 4)
    throw std::invalid_argument("TorusLattice: d must be 2 or 4");
  if (n < 2) throw std::invalid_argument("TorusLattice: n must be >= 2");
  if (!(l > 0.0) || !std::isfinite(l))
    throw std::invalid_argument("TorusLattice: l must be positive");
  volume_ = 1;
  for (int i = 0; i < d_; ++i) volume_ *= n_;
}

Coords TorusLattice::coords(std::int64_t v) const {
  Coords c{};
  for (int i = d_ - 1; i >= 0; --i) {
    c[i] = static_cast<int>(v % n_);
    v /= n_;
  }
  return c;
}

std::int64_t TorusLattice::vertex(Coords c) const {
  std::int64_t v = 0;
  for (int i = 0; i < d_; ++i) {
    const int x = ((c[i] % n_) + n_) % n_;
    v = v * n_ + x;
  }
  return v;
}

std::int64_t TorusLattice::neighbor(std::int64_t v, int mu, int step) const {
  Coords c = coords(v);
  c[mu] += step;
  return vertex(c);
}

Edge TorusLattice::edge(std::int64_t e) const {
  return Edge{e / d_, static_cast<int>(e % d_)};
}

std::int64_t TorusLattice::edge_target(std::int64_t e) const {
  const Edge ed = edge(e);
  return neighbor(ed.source, ed.direction);
}

std::int64_t TorusLattice::plaquette_index(std::int64_t v, int mu,
                                           int nu) const {
  // pair index for mu < nu in lexicographic order
  int pair = 0;
  for (int a = 0; a < mu; ++a) pair += d_ - 1 - a;
  pair += nu - mu - 1;
  return v * (d_ * (d_ - 1) / 2) + pair;
}

Plaquette TorusLattice::plaquette(std::int64_t p) const {
  const int pairs = d_ * (d_ - 1) / 2;
  const std::int64_t v = p / pairs;
  int pair = static_cast<int>(p % pairs);
  int mu = 0;
  while (pair >= d_ - 1 - mu) {
    pair -= d_ - 1 - mu;
    ++mu;
  }
  return Plaquette{v, mu, mu + 1 + pair};
}

std::array<std::int64_t, 4> TorusLattice::plaquette_edges(
    std::int64_t p) const {
  const Plaquette pl = plaquette(p);
  const std::int64_t vmu = neighbor(pl.base, pl.mu);
  const std::int64_t vnu = neighbor(pl.base, pl.nu);
  return {edge_index(pl.base, pl.mu), edge_index(vmu, pl.nu),
          edge_index(vnu, pl.mu), edge_index(pl.base, pl.nu)};
}

DirectedPath TorusLattice::directed_path(std::int64_t from,
                                         std::int64_t to) const {
  if (from < 0 || from >= volume_ || to < 0 || to >= volume_)
    throw std::invalid_argument("directed_path: vertex out of range");
  const Coords a = coords(from);
  const Coords b = coords(to);
  DirectedPath path;
  std::int64_t cur = from;
  for (int mu = 0; mu < d_; ++mu) {
    const int steps = ((b[mu] - a[mu]) % n_ + n_) % n_;
    for (int k = 0; k < steps; ++k) {
      path.push_back({edge_index(cur, mu), false});
      cur = neighbor(cur, mu);
    }
  }
  return path;
}

std::vector<Edge> TorusLattice::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (std::int64_t v = 0; v < volume_; ++v)
    for (int mu = 0; mu < d_; ++mu) out.push_back(Edge{v, mu});
  return out;
}

std::vector<Plaquette> TorusLattice::plaquettes() const {
  std::vector<Plaquette> out;
  out.reserve(plaquette_count());
  for (std::int64_t v = 0; v < volume_; ++v)
    for (int mu = 0; mu < d_; ++mu)
      for (int nu = mu + 1; nu < d_; ++nu) out.push_back(Plaquette{v, mu, nu});
  return out;
}

std::int64_t step_source(const TorusLattice& lat, const PathStep& s) {
  return s.reverse ? lat.edge_target(s.edge) : lat.edge(s.edge).source;
}

std::int64_t step_target(const TorusLattice& lat, const PathStep& s) {
  return s.reverse ? lat.edge(s.edge).source : lat.edge_target(s.edge);
}

}  // namespace latspec
