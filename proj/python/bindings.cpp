#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "torusos/algebra.hpp"
#include "torusos/cli.hpp"
#include "torusos/io.hpp"
#include "torusos/lattice.hpp"
#include "torusos/matroid.hpp"
#include "torusos/toric.hpp"

namespace py = pybind11;
using namespace torusos;

namespace pybind11::detail {

// Python int <-> mpz_class through the decimal representation.
template <>
struct type_caster<mpz_class> {
  PYBIND11_TYPE_CASTER(mpz_class, const_name("int"));

  bool load(handle src, bool) {
    if (!src || !PyLong_Check(src.ptr())) return false;
    const auto text = py::str(src).cast<std::string>();
    return value.set_str(text, 10) == 0;
  }

  static handle cast(const mpz_class& v, return_value_policy, handle) {
    return PyLong_FromString(v.get_str().c_str(), nullptr, 10);
  }
};

}  // namespace pybind11::detail

namespace {

using Rows = std::vector<std::vector<Integer>>;

IntMatrix to_matrix(const Rows& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  for (const auto& r : rows)
    if (r.size() != cols) throw Error(ErrorCode::ShapeMismatch, "ragged matrix");
  return IntMatrix::from_rows(rows, cols);
}

Rows to_rows(const IntMatrix& m) {
  Rows out;
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(m.row(i));
  return out;
}

ToricArrangement make_arrangement(std::size_t dim, const std::vector<std::pair<IntVector, std::string>>& hypertori) {
  std::vector<Hypertorus> h;
  for (const auto& [chi, phase] : hypertori) h.push_back({chi, Rational::parse(phase)});
  return ToricArrangement(dim, std::move(h));
}

py::dict layer_dict(const LayerPoset& p, std::size_t i) {
  py::dict d;
  const auto& l = p.layer(i);
  d["id"] = p.id(i);
  d["rank"] = l.rank();
  d["lattice"] = to_rows(l.lattice);
  std::vector<std::string> phases;
  for (const auto& q : l.phases) phases.push_back(q.str());
  d["phases"] = phases;
  d["support"] = elements(l.support);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact computations for toric arrangements";

  static py::exception<Error> error(m, "TorusosError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, (std::string(to_string(e.code())) + ": " + e.what()).c_str());
    }
  });

  m.def("hermite_normal_form", [](const Rows& a) {
    const auto f = hermite_normal_form(to_matrix(a));
    return py::make_tuple(to_rows(f.H), to_rows(f.U));
  }, "Row-style HNF; returns (H, U) with H = U * A.");
  m.def("smith_normal_form", [](const Rows& a) {
    const auto f = smith_normal_form(to_matrix(a));
    return py::make_tuple(to_rows(f.S), to_rows(f.U), to_rows(f.V));
  }, "Returns (S, U, V) with S = U * A * V.");
  m.def("invariant_factors", [](const Rows& a) { return invariant_factors(to_matrix(a)); });
  m.def("saturate", [](const Rows& a) { return to_rows(saturate(to_matrix(a))); });

  py::class_<ToricArrangement>(m, "ToricArrangement")
      .def(py::init(&make_arrangement), py::arg("dim"), py::arg("hypertori"),
           "hypertori: list of (character, phase) with phase a string 'p/q'")
      .def_static("from_json", [](const std::string& text) { return parse_arrangement(text); })
      .def("to_json", [](const ToricArrangement& a) { return arrangement_to_json(a); })
      .def_property_readonly("dim", &ToricArrangement::dim)
      .def("__len__", &ToricArrangement::size);

  m.def("layers", [](const ToricArrangement& a) {
    const auto p = layer_poset(a);
    py::list out;
    for (std::size_t i = 0; i < p.size(); ++i) out.append(layer_dict(p, i));
    return out;
  }, "Layers in canonical order; index 0 is the torus.");
  m.def("hasse_edges", [](const ToricArrangement& a) {
    const auto p = layer_poset(a);
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& [i, j] : p.poset().hasse_edges()) out.emplace_back(p.id(i), p.id(j));
    return out;
  });
  m.def("poset_isomorphic", [](const ToricArrangement& a, const ToricArrangement& b) {
    return poset_isomorphic(layer_poset(a), layer_poset(b)).has_value();
  });
  m.def("poincare_polynomial", [](const ToricArrangement& a) { return poincare_polynomial(a); });
  m.def("betti", &betti, py::arg("arrangement"), py::arg("k"));
  m.def("deletion", &deletion);
  m.def("restriction", &restriction);
  m.def("restriction_is_valid", &restriction_is_valid);

  py::class_<ToricClass>(m, "ToricClass")
      .def("is_zero", &ToricClass::is_zero)
      .def("__eq__", [](const ToricClass& a, const ToricClass& b) { return a == b; })
      .def("__add__", [](const ToricClass& a, const ToricClass& b) { return a + b; })
      .def("__rmul__", [](const ToricClass& a, const Integer& c) { return c * a; });

  py::class_<ToricCohomology>(m, "Cohomology")
      .def(py::init<const ToricArrangement&>())
      .def("torus_class", [](const ToricCohomology& h, const IntVector& v) { return torus_class(h, v); })
      .def("hypertorus_class", [](const ToricCohomology& h, std::size_t i) { return hypertorus_class(h, i); })
      .def("multiply", [](const ToricCohomology& h, const ToricClass& a, const ToricClass& b) { return multiply_A(h, a, b); })
      .def("embed", [](const ToricCohomology& h, const ToricClass& a) { return embed_p(h, a); })
      .def("is_coherent", [](const ToricCohomology& h, const ToricClass& a) { return is_coherent(h, a); })
      .def("multiply_coherent", [](const ToricCohomology& h, const ToricClass& a, const ToricClass& b) { return multiply_B(h, a, b); })
      .def("format", [](const ToricCohomology& h, const ToricClass& a) { return class_str(h, a); })
      .def("rank", [](const ToricCohomology& h, std::size_t k) { return ring_basis(h, k).size(); })
      .def("basis_labels", [](const ToricCohomology& h, std::size_t k) {
        std::vector<std::string> out;
        for (const auto& key : ring_basis(h, k)) out.push_back(key_label(h, key));
        return out;
      })
      .def("annihilator_rank", [](const ToricCohomology& h, const ToricClass& u) { return annihilator_rank_deg1(h, u); })
      .def("whitney_ok", [](const ToricCohomology& h) { return whitney_check(h).ok(); })
      .def("degree1_generation", [](const ToricCohomology& h) {
        const auto r = degree1_generation(h);
        py::list rows;
        for (const auto& row : r.rows) {
          py::dict d;
          d["degree"] = row.degree;
          d["betti"] = row.betti;
          d["product_rank"] = row.product_rank;
          d["index"] = row.index;
          rows.append(d);
        }
        py::dict out;
        out["generated"] = r.generated();
        out["generated_over_z"] = r.generated_over_z();
        out["degrees"] = rows;
        return out;
      });

  py::class_<MultiplicityOracle>(m, "MultiplicityOracle")
      .def_static("from_json", [](const std::string& text) { return parse_oracle(text); })
      .def("to_json", [](const MultiplicityOracle& o) { return oracle_to_json(o); })
      .def_property_readonly("n", &MultiplicityOracle::n)
      .def_property_readonly("d", &MultiplicityOracle::d)
      .def("rank", &MultiplicityOracle::rank)
      .def("multiplicity", &MultiplicityOracle::multiplicity)
      .def("__eq__", [](const MultiplicityOracle& a, const MultiplicityOracle& b) { return a == b; });
  m.def("oracle_from_matrix", [](const Rows& a) { return oracle_from_matrix(to_matrix(a)); });
  m.def("reconstruct", [](const MultiplicityOracle& o, const std::vector<std::size_t>& basis) {
    return to_rows(reconstruct(o, basis));
  });
  m.def("column_sign_equivalent", [](const Rows& a, const Rows& b) {
    return column_sign_equivalent(to_matrix(a), to_matrix(b));
  });

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, "Runs the command line front end in-process; returns (exit code, stdout, stderr).");
}
