// Python bindings for the latspec core: lattice geometry, gauge network
// generators, actions, the decomposition report, and continuum sweeps.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "latspec/action.hpp"
#include "latspec/continuum.hpp"
#include "latspec/run.hpp"
#include "latspec/version.hpp"

namespace py = pybind11;
using namespace latspec;
using nlohmann::json;

namespace {

ConstrainedSpec spectrum_from_pairs(
    const std::vector<std::pair<double, int>>& levels) {
  ConstrainedSpec spec;
  spec.levels = levels;
  spec.matrix_size();
  return spec;
}

py::dict report_dict(const DecompositionReport& r) {
  py::dict d;
  d["S"] = r.S;
  d["W"] = r.W;
  d["T4"] = r.T4;
  d["T2edge"] = r.T2edge;
  d["alpha_w"] = r.alpha.alpha_w;
  d["alpha_4"] = r.alpha.alpha_4;
  d["alpha_2"] = r.alpha.alpha_2;
  d["alpha_0"] = r.alpha.alpha_0;
  d["residual"] = r.residual;
  d["exact_lattice"] = r.exact_lattice;
  return d;
}

py::dict convergence_dict(const ConvergenceReport& r) {
  py::dict d;
  d["observable"] = r.observable;
  py::list pts;
  for (const SweepPoint& p : r.points) {
    py::dict q;
    q["n"] = p.n;
    q["l"] = p.l;
    q["value"] = p.value;
    q["target"] = p.target;
    q["abs_err"] = p.abs_err;
    q["rel_err"] = p.rel_err;
    pts.append(q);
  }
  d["points"] = pts;
  d["fitted"] = r.fitted;
  d["absolute_mode"] = r.absolute_mode;
  d["kappa"] = r.kappa;
  if (r.fitted) {
    d["order"] = r.fit.order;
    d["fit_rms"] = r.fit.fit_residual;
  }
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "lattice spectral action laboratory";
  m.attr("__version__") = kVersion;

  py::class_<PhiloxRng>(m, "PhiloxRng")
      .def(py::init<std::uint64_t, std::uint64_t>(), py::arg("seed"),
           py::arg("stream") = 0)
      .def("split", &PhiloxRng::split)
      .def("uniform", &PhiloxRng::uniform)
      .def("normal", &PhiloxRng::normal)
      .def("next_u64", &PhiloxRng::next_u64);

  py::class_<Edge>(m, "Edge")
      .def_readonly("source", &Edge::source)
      .def_readonly("direction", &Edge::direction);

  py::class_<TorusLattice>(m, "TorusLattice")
      .def(py::init<int, int, double>(), py::arg("d"), py::arg("n"),
           py::arg("l"))
      .def_property_readonly("d", &TorusLattice::dim)
      .def_property_readonly("n", &TorusLattice::extent)
      .def_property_readonly("l", &TorusLattice::spacing)
      .def("vertex_count", &TorusLattice::vertex_count)
      .def("edge_count", &TorusLattice::edge_count)
      .def("plaquette_count", &TorusLattice::plaquette_count)
      .def("coords",
           [](const TorusLattice& lat, std::int64_t v) {
             const Coords c = lat.coords(v);
             return std::vector<int>(c.begin(), c.begin() + lat.dim());
           })
      .def("vertex",
           [](const TorusLattice& lat, const std::vector<int>& c) {
             Coords full{};
             for (std::size_t i = 0; i < c.size() && i < 4; ++i)
               full[i] = c[i];
             return lat.vertex(full);
           })
      .def("edge", &TorusLattice::edge)
      .def("edge_target", &TorusLattice::edge_target)
      .def("plaquette_edges", &TorusLattice::plaquette_edges)
      .def("directed_path", [](const TorusLattice& lat, std::int64_t from,
                               std::int64_t to) {
        std::vector<std::pair<std::int64_t, bool>> out;
        for (const PathStep& s : lat.directed_path(from, to))
          out.emplace_back(s.edge, s.reverse);
        return out;
      });

  m.def("build_gammas", [](int d) {
    const CliffordBasis b = CliffordBasis::build(d);
    return py::make_tuple(b.gamma, b.chirality);
  });

  py::class_<GaugeNetworkConfig>(m, "GaugeNetworkConfig")
      .def_readonly("lattice", &GaugeNetworkConfig::lattice)
      .def_readonly("N", &GaugeNetworkConfig::N)
      .def_readonly("D", &GaugeNetworkConfig::D)
      .def_readonly("L", &GaugeNetworkConfig::L)
      .def("to_json",
           [](const GaugeNetworkConfig& cfg) {
             return config_to_json(cfg).dump();
           })
      .def_static("from_json", [](const std::string& text) {
        return config_from_json(json::parse(text));
      });

  m.def(
      "random_unconstrained",
      [](const TorusLattice& lat, int N, double scale, std::uint64_t seed) {
        return random_unconstrained(lat, N, scale, PhiloxRng(seed));
      },
      py::arg("lattice"), py::arg("N"), py::arg("scale"), py::arg("seed"));
  m.def(
      "random_constrained",
      [](const TorusLattice& lat,
         const std::vector<std::pair<double, int>>& spectrum,
         std::uint64_t seed) {
        return random_constrained(lat, spectrum_from_pairs(spectrum),
                                  PhiloxRng(seed));
      },
      py::arg("lattice"), py::arg("spectrum"), py::arg("seed"));
  m.def("check_representation", &check_representation);
  m.def("gauge_transform", &gauge_transform);
  m.def("path_holonomy",
        [](const GaugeNetworkConfig& cfg,
           const std::vector<std::pair<std::int64_t, bool>>& steps) {
          DirectedPath path;
          for (const auto& [e, rev] : steps) path.push_back({e, rev});
          return path_holonomy(cfg, path);
        });

  m.def("exp_i_hermitian", &exp_i_hermitian, py::arg("h"), py::arg("scale"));
  m.def(
      "haar_unitary",
      [](int n, std::uint64_t seed) {
        PhiloxRng rng(seed);
        return haar_unitary(n, rng);
      },
      py::arg("n"), py::arg("seed"));
  m.def(
      "gue_hermitian",
      [](int n, double scale, std::uint64_t seed) {
        PhiloxRng rng(seed);
        return gue_hermitian(n, scale, rng);
      },
      py::arg("n"), py::arg("scale"), py::arg("seed"));

  m.def("wilson_action", &wilson_action, py::arg("config"),
        py::arg("threads") = 1);
  m.def("spectral_action", &spectral_action, py::arg("config"), py::arg("c"),
        py::arg("threads") = 1);
  m.def("spectral_action_dense", &spectral_action_dense, py::arg("config"),
        py::arg("c"), py::arg("max_dim") = 8192);
  m.def("plaquette_holonomy", &plaquette_holonomy);
  m.def("higgs_terms", [](const GaugeNetworkConfig& cfg) {
    const HiggsTerms h = higgs_terms(cfg);
    return py::make_tuple(h.t4, h.t2_edge, h.per_edge);
  });
  m.def(
      "decompose",
      [](const GaugeNetworkConfig& cfg, double c) {
        return report_dict(decompose(cfg, c));
      },
      py::arg("config"), py::arg("c"));
  m.def("edge_cancellation_max", &edge_cancellation_max);
  m.def("vertex_trace_profile", &vertex_trace_profile);
  m.def("eqB_collapse", [](const GaugeNetworkConfig& cfg, double c) {
    const EqBSides s = eqB_collapse(cfg, c);
    return py::make_tuple(s.lhs, s.rhs);
  });

  m.def("fields_from_json", [](const std::string& text) {
    return SmoothFieldSpec::from_json(json::parse(text));
  });
  py::class_<SmoothFieldSpec>(m, "SmoothFieldSpec")
      .def_readonly("d", &SmoothFieldSpec::d)
      .def_readonly("N", &SmoothFieldSpec::N)
      .def_readonly("period", &SmoothFieldSpec::period)
      .def("k_max", &SmoothFieldSpec::k_max)
      .def("to_json",
           [](const SmoothFieldSpec& f) { return f.to_json().dump(); });
  m.def("from_continuum", &from_continuum);
  m.def("ym_integral", &ym_integral, py::arg("fields"), py::arg("quad_n"),
        py::arg("strict") = true);
  m.def(
      "wilson_limit_sweep",
      [](const SmoothFieldSpec& fields, const std::vector<int>& n_list,
         int threads) {
        return convergence_dict(wilson_limit_sweep(fields, n_list, threads));
      },
      py::arg("fields"), py::arg("n_list"), py::arg("threads") = 1);
  m.def(
      "higgs_limit_sweep",
      [](const SmoothFieldSpec& fields, const std::vector<int>& n_list,
         int threads) {
        py::list out;
        for (const auto& r : higgs_limit_sweep(fields, n_list, threads))
          out.append(convergence_dict(r));
        return out;
      },
      py::arg("fields"), py::arg("n_list"), py::arg("threads") = 1);
  m.def("fit_order",
        [](const std::vector<std::pair<double, double>>& pts) {
          const FitResult f = fit_order(pts);
          return py::make_tuple(f.order, f.fit_residual, f.points_used);
        });

  m.def("action_coefficients",
        [](const TorusLattice& lat, int N, double c) {
          const ActionCoefficients a = action_coefficients(lat, N, c);
          return py::make_tuple(a.alpha_w, a.alpha_4, a.alpha_2, a.alpha_0);
        });
}
