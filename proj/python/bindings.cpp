// Thin pybind11 layer. Matrices cross as numpy arrays; reports cross as JSON
// text and are decoded on the Python side, so the field names match the CLI.

#include "reconlab/error.hpp"
#include "reconlab/geometry_suite.hpp"
#include "reconlab/graph6.hpp"
#include "reconlab/hypomorphism.hpp"
#include "reconlab/json_io.hpp"
#include "reconlab/presentation.hpp"
#include "reconlab/solid_angle.hpp"
#include "reconlab/verifiers.hpp"
#include "reconlab/version.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace reconlab;

namespace {

using Sigma = std::vector<std::vector<int>>;

Hypomorphism to_hypomorphism(const Sigma& s) {
  Hypomorphism h;
  for (const auto& image : s) h.sigmas.emplace_back(image);
  return h;
}

Sigma to_sigma(const Hypomorphism& h) { return to_json(h).get<Sigma>(); }

std::string text(const Json& j) { return dump_json(j, -1); }

VerifyOptions options(bool force) {
  VerifyOptions o;
  o.force = force;
  return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.attr("__version__") = kVersion;

  static py::exception<Error> error(m, "ReconlabError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::tuple args = py::make_tuple(std::string(to_string(e.kind())), e.what());
      PyErr_SetObject(error.ptr(), args.ptr());
    }
  });

  m.def("graph6_decode", [](const std::string& s) { return graph6_decode(s).adjacency.entries(); });
  m.def("graph6_encode", [](const Matrix& a) { return graph6_encode(SymmetricMatrix(a)); });

  m.def(
      "find_hypomorphism",
      [](const Matrix& a, const Matrix& b) -> std::optional<Sigma> {
        const auto h = find_hypomorphism(SymmetricMatrix(a), SymmetricMatrix(b));
        if (!h) return std::nullopt;
        return to_sigma(*h);
      },
      py::arg("a"), py::arg("b"));
  m.def(
      "verify_hypomorphism",
      [](const Matrix& a, const Matrix& b, const Sigma& sigma, double tol) {
        return text(to_json(verify_hypomorphism(SymmetricMatrix(a), SymmetricMatrix(b),
                                                to_hypomorphism(sigma), tol)));
      },
      py::arg("a"), py::arg("b"), py::arg("sigma"), py::arg("tol") = kExactTol);

  m.def(
      "verify_tutte_identity",
      [](const Matrix& a, const Matrix& b, const Sigma& sigma, bool force) {
        return text(to_json(verify_tutte_identity(SymmetricMatrix(a), SymmetricMatrix(b),
                                                  to_hypomorphism(sigma), default_grid(),
                                                  default_grid(), options(force))));
      },
      py::arg("a"), py::arg("b"), py::arg("sigma"), py::arg("force") = false);
  m.def(
      "verify_lambda_constancy",
      [](const Matrix& a, const Matrix& b, const Sigma& sigma, bool force) {
        return text(to_json(verify_lambda_constancy(SymmetricMatrix(a), SymmetricMatrix(b),
                                                    to_hypomorphism(sigma), default_grid(),
                                                    default_grid(), options(force))));
      },
      py::arg("a"), py::arg("b"), py::arg("sigma"), py::arg("force") = false);
  m.def(
      "verify_lowest_eigenspaces",
      [](const Matrix& a, const Matrix& b, const Sigma& sigma, int t_samples, bool force) {
        return text(to_json(verify_lowest_eigenspaces(SymmetricMatrix(a), SymmetricMatrix(b),
                                                      to_hypomorphism(sigma), t_samples,
                                                      options(force))));
      },
      py::arg("a"), py::arg("b"), py::arg("sigma"), py::arg("t_samples") = 10,
      py::arg("force") = false);
  m.def(
      "verify_t_agreement",
      [](const Matrix& a, const Matrix& b, const Sigma& sigma, double lambda) {
        return text(to_json(verify_t_agreement(SymmetricMatrix(a), SymmetricMatrix(b),
                                               to_hypomorphism(sigma), lambda)));
      },
      py::arg("a"), py::arg("b"), py::arg("sigma"), py::arg("lam"));

  m.def("factor_presentation",
        [](const Matrix& a) { return factor_presentation(SymmetricMatrix(a)).columns(); });
  m.def("t_of_lambda", [](const Matrix& a, double lambda) {
    return t_of_lambda(SymmetricMatrix(a), lambda);
  });
  m.def("lambda0_search", [](const Matrix& a) { return lambda0_search(SymmetricMatrix(a)); });

  m.def(
      "angle_fraction",
      [](const Vector& apex, const Matrix& generators, std::int64_t samples, std::uint64_t seed,
         bool monte_carlo) {
        const Cone c{apex, generators, std::nullopt};
        return text(to_json(monte_carlo ? monte_carlo_fraction(c, samples, seed)
                                        : angle_fraction(c, samples, seed)));
      },
      py::arg("apex"), py::arg("generators"), py::arg("samples") = 1000000,
      py::arg("seed") = kDefaultSeed, py::arg("monte_carlo") = false);

  m.def(
      "run_geometry_suite",
      [](std::uint64_t seed, int count) { return text(to_json(run_geometry_suite(seed, count))); },
      py::arg("seed") = kDefaultSeed, py::arg("count") = 200);
}
