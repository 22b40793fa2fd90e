#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hamcoh/algebra.hpp"
#include "hamcoh/algebra_io.hpp"
#include "hamcoh/chains.hpp"
#include "hamcoh/cohomology.hpp"
#include "hamcoh/error.hpp"
#include "hamcoh/rank.hpp"
#include "hamcoh/render.hpp"

namespace py = pybind11;
using namespace hamcoh;

namespace {

AlgebraSpec make_spec(const std::string& family, unsigned n, std::uint32_t p,
                      const std::string& grading) {
  AlgebraSpec s{parse_family(family), n, p, parse_grading(grading)};
  s.validate();
  return s;
}

py::dict entry_dict(const BoxKey& key, const TableEntry& e) {
  py::dict d;
  d["g"] = key.g;
  d["k"] = key.k;
  d["dim_C"] = e.dim_c;
  d["rank_in"] = e.rank_in ? py::cast(*e.rank_in) : py::none();
  d["rank_out"] = e.rank_out ? py::cast(*e.rank_out) : py::none();
  d["dim_H"] = e.dim_h;
  d["provenance"] = std::string(to_string(e.provenance));
  if (e.source) d["source"] = py::make_tuple(e.source->g, e.source->k);
  return d;
}

PruningOptions pruning(bool prop1, bool prop2, bool prop3) { return {prop1, prop2, prop3}; }

}  // namespace

PYBIND11_MODULE(_hamcoh, m) {
  m.doc() = "Cohomology of truncated Hamiltonian and Poisson Lie p-algebras";

  const auto& error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", error.ptr());
  py::register_exception<ResourceError>(m, "ResourceError", error.ptr());

  py::class_<LiePAlgebra>(m, "Algebra")
      .def(py::init([](const std::string& family, unsigned n, std::uint32_t p,
                       const std::string& grading) {
             return structure_constants(make_spec(family, n, p, grading));
           }),
           py::arg("family"), py::arg("n"), py::arg("p"), py::arg("grading") = "symmetric")
      .def_property_readonly("label", [](const LiePAlgebra& L) { return L.spec().label(); })
      .def_property_readonly("dim", &LiePAlgebra::dim)
      .def_property_readonly("basis", [](const LiePAlgebra& L) {
        std::vector<std::string> out;
        for (const auto& b : L.basis()) out.push_back(to_string(b));
        return out;
      })
      .def_property_readonly("grades", [](const LiePAlgebra& L) { return L.grades(); })
      .def("bracket", [](const LiePAlgebra& L, std::size_t i, std::size_t j) {
             if (i >= L.dim() || j >= L.dim()) throw py::index_error("basis index out of range");
             std::map<std::size_t, std::uint32_t> out;
             for (const auto& e : L.bracket_vector(i, j)) out[e.index] = e.value;
             return out;
           })
      .def("verify", [](const LiePAlgebra& L) {
        py::list out;
        for (const auto& c : verify_algebra(L).checks) {
          py::dict d;
          d["name"] = c.name;
          d["passed"] = c.passed;
          d["skipped"] = c.skipped;
          d["detail"] = c.detail;
          out.append(d);
        }
        return out;
      })
      .def("to_json", [](const LiePAlgebra& L) { return algebra_to_json(L).dump(); })
      .def("chain_dimension_total",
           [](const LiePAlgebra& L) { return to_string(ChainDimensions(L).total()); });

  m.def("algebra_from_json", [](const std::string& text) {
    return algebra_from_json(nlohmann::json::parse(text));
  });

  m.def("compute_box", [](const LiePAlgebra& L, int g, int k) {
    py::gil_scoped_release release;
    auto e = compute_box(L, k, g);
    py::gil_scoped_acquire acquire;
    return entry_dict({g, k}, e);
  }, py::arg("algebra"), py::arg("g"), py::arg("k"));

  m.def("table", [](const LiePAlgebra& L, bool prop1, bool prop2, bool prop3, int k_min,
                    std::optional<int> k_max, unsigned workers) {
    ComputeOptions o;
    o.workers = workers;
    CohomologyTable t;
    {
      py::gil_scoped_release release;
      t = full_table(L, pruning(prop1, prop2, prop3), o, {k_min, k_max});
    }
    py::list out;
    for (const auto& [key, e] : t.entries) out.append(entry_dict(key, e));
    return out;
  }, py::arg("algebra"), py::arg("prop1") = false, py::arg("prop2") = false,
     py::arg("prop3") = false, py::arg("k_min") = 1, py::arg("k_max") = py::none(),
     py::arg("workers") = 1);

  m.def("render_table", [](const LiePAlgebra& L, bool prune, bool ascii, bool merged_rows) {
    const auto t = full_table(L, prune ? PruningOptions::all() : PruningOptions{});
    RenderOptions r;
    r.ascii = ascii;
    r.merged_rows = merged_rows;
    return render_text(t, r);
  }, py::arg("algebra"), py::arg("prune") = false, py::arg("ascii") = false,
     py::arg("merged_rows") = false);

  m.def("cocycles", [](const LiePAlgebra& L, int g, int k, bool ascii) {
    const auto c = cocycle_representatives(L, k, g);
    std::vector<std::string> out;
    for (const auto& v : c.representatives) out.push_back(format_chain(L, c.basis, v, ascii));
    return out;
  }, py::arg("algebra"), py::arg("g"), py::arg("k"), py::arg("ascii") = false);

  m.def("rank_mod_p", [](std::size_t rows, std::size_t cols,
                         const std::vector<std::tuple<std::uint32_t, std::uint32_t, std::int64_t>>& entries,
                         std::uint32_t p) {
    const PrimeField F(p);
    std::vector<Triplet> t;
    for (const auto& [r, c, v] : entries) t.push_back({r, c, F.make(v).value});
    return rank_mod_p(SparseMatrixFp::from_triplets(rows, cols, std::move(t), F), F);
  }, py::arg("rows"), py::arg("cols"), py::arg("entries"), py::arg("p"));
}
