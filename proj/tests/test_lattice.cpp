#include <doctest.h>

#include <map>
#include <set>
#include <stdexcept>

#include "latspec/lattice.hpp"

using namespace latspec;

TEST_CASE("counts follow n^d, d n^d, d(d-1)/2 n^d") {
  const TorusLattice a(2, 2, 1.0);
  CHECK(a.vertex_count() == 4);
  CHECK(a.edge_count() == 8);
  CHECK(a.plaquette_count() == 4);

  const TorusLattice b(4, 2, 1.0);
  CHECK(b.vertex_count() == 16);
  CHECK(b.edge_count() == 64);
  CHECK(b.plaquette_count() == 96);

  const TorusLattice c(4, 3, 0.5);
  CHECK(c.vertex_count() == 81);
  CHECK(c.edge_count() == 324);
  CHECK(c.plaquette_count() == 486);

  CHECK(static_cast<std::int64_t>(a.edges().size()) == a.edge_count());
  CHECK(static_cast<std::int64_t>(c.plaquettes().size()) ==
        c.plaquette_count());
}

TEST_CASE("invalid parameters are rejected") {
  CHECK_THROWS_AS(TorusLattice(3, 4, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(TorusLattice(1, 4, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(TorusLattice(6, 4, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(TorusLattice(2, 1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(TorusLattice(2, 4, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(TorusLattice(2, 4, -1.0), std::invalid_argument);
}

TEST_CASE("vertex order is lexicographic in coordinates") {
  const TorusLattice lat(2, 3, 1.0);
  CHECK(lat.coords(0) == Coords{0, 0, 0, 0});
  CHECK(lat.coords(1) == Coords{0, 1, 0, 0});
  CHECK(lat.coords(3) == Coords{1, 0, 0, 0});
  for (std::int64_t v = 0; v < lat.vertex_count(); ++v)
    CHECK(lat.vertex(lat.coords(v)) == v);
  // wrap reduction
  CHECK(lat.vertex(Coords{4, -1, 0, 0}) == lat.vertex(Coords{1, 2, 0, 0}));
}

TEST_CASE("every vertex has d outgoing and d incoming edges") {
  for (const auto& [d, n] : std::vector<std::pair<int, int>>{{2, 4}, {4, 2}}) {
    const TorusLattice lat(d, n, 1.0);
    std::map<std::int64_t, int> out_deg, in_deg;
    for (const Edge& e :
         lat.edges()) {
      out_deg[e.source]++;
      in_deg[lat.edge_target(lat.edge_index(e.source, e.direction))]++;
    }
    for (std::int64_t v = 0; v < lat.vertex_count(); ++v) {
      CHECK(out_deg[v] == d);
      CHECK(in_deg[v] == d);
    }
  }
}

TEST_CASE("plaquette boundary edges") {
  // d=2, n=2, base (0,0), axes (1,2) in 1-based labels
  const TorusLattice lat(2, 2, 1.0);
  const std::int64_t p = lat.plaquette_index(lat.vertex({0, 0, 0, 0}), 0, 1);
  const auto e = lat.plaquette_edges(p);
  CHECK(lat.edge(e[0]).source == lat.vertex({0, 0, 0, 0}));
  CHECK(lat.edge(e[0]).direction == 0);
  CHECK(lat.edge(e[1]).source == lat.vertex({1, 0, 0, 0}));
  CHECK(lat.edge(e[1]).direction == 1);
  CHECK(lat.edge(e[2]).source == lat.vertex({0, 1, 0, 0}));
  CHECK(lat.edge(e[2]).direction == 0);
  CHECK(lat.edge(e[3]).source == lat.vertex({0, 0, 0, 0}));
  CHECK(lat.edge(e[3]).direction == 1);

  // d=4, n=2, base (1,1,0,0), axes (2,4): sources wrap mod 2
  const TorusLattice big(4, 2, 1.0);
  const std::int64_t q =
      big.plaquette_index(big.vertex({1, 1, 0, 0}), 1, 3);
  const auto f = big.plaquette_edges(q);
  CHECK(big.edge(f[0]).source == big.vertex({1, 1, 0, 0}));
  CHECK(big.edge(f[0]).direction == 1);
  CHECK(big.edge(f[1]).source == big.vertex({1, 0, 0, 0}));
  CHECK(big.edge(f[1]).direction == 3);
  CHECK(big.edge(f[2]).source == big.vertex({1, 1, 0, 1}));
  CHECK(big.edge(f[2]).direction == 1);
  CHECK(big.edge(f[3]).source == big.vertex({1, 1, 0, 0}));
  CHECK(big.edge(f[3]).direction == 3);

  // boundary edges are valid ids and pairwise distinct
  for (std::int64_t pp = 0; pp < big.plaquette_count(); ++pp) {
    const auto ed = big.plaquette_edges(pp);
    std::set<std::int64_t> uniq(ed.begin(), ed.end());
    CHECK(uniq.size() == 4);
    for (std::int64_t id : ed) {
      CHECK(id >= 0);
      CHECK(id < big.edge_count());
    }
  }
}

TEST_CASE("plaquette ids are a bijection onto (base, axis pair)") {
  const TorusLattice lat(4, 3, 1.0);
  std::set<std::int64_t> seen;
  for (std::int64_t v = 0; v < lat.vertex_count(); ++v)
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = mu + 1; nu < 4; ++nu) {
        const std::int64_t p = lat.plaquette_index(v, mu, nu);
        CHECK(seen.insert(p).second);
        const Plaquette pl = lat.plaquette(p);
        CHECK(pl.base == v);
        CHECK(pl.mu == mu);
        CHECK(pl.nu == nu);
      }
  CHECK(static_cast<std::int64_t>(seen.size()) == lat.plaquette_count());
}

TEST_CASE("directed paths") {
  const TorusLattice lat(2, 4, 1.0);
  CHECK(lat.directed_path(5, 5).empty());

  // (0,0) -> (2,0): two forward steps along the first axis
  const auto path = lat.directed_path(lat.vertex({0, 0, 0, 0}),
                                      lat.vertex({2, 0, 0, 0}));
  REQUIRE(path.size() == 2);
  for (const PathStep& s : path) {
    CHECK(!s.reverse);
    CHECK(lat.edge(s.edge).direction == 0);
  }

  // wrap: (2,0) -> (0,0) on n=3 is a single forward step
  const TorusLattice tri(2, 3, 1.0);
  const auto wrap = tri.directed_path(tri.vertex({2, 0, 0, 0}),
                                      tri.vertex({0, 0, 0, 0}));
  REQUIRE(wrap.size() == 1);
  CHECK(!wrap[0].reverse);
  CHECK(tri.edge(wrap[0].edge).source == tri.vertex({2, 0, 0, 0}));

  // composition: path(a,b) followed by path(b,c) transports a -> c
  const TorusLattice big(4, 3, 1.0);
  const std::int64_t a = 5, b = 77, c = 33;
  DirectedPath joined = big.directed_path(a, b);
  const DirectedPath second = big.directed_path(b, c);
  joined.insert(joined.end(), second.begin(), second.end());
  std::int64_t at = a;
  for (const PathStep& s : joined) {
    CHECK(step_source(big, s) == at);
    at = step_target(big, s);
  }
  CHECK(at == c);

  // length bound: d*(n-1) forward steps suffice on the torus
  for (std::int64_t to = 0; to < big.vertex_count(); to += 7)
    CHECK(big.directed_path(0, to).size() <=
          static_cast<std::size_t>(big.dim() * (big.extent() - 1)));

  CHECK_THROWS_AS(lat.directed_path(-1, 0), std::invalid_argument);
  CHECK_THROWS_AS(lat.directed_path(0, lat.vertex_count()),
                  std::invalid_argument);
}
