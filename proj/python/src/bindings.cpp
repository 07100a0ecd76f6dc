#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hochlab/audit.hpp"
#include "hochlab/cosimplicial.hpp"
#include "hochlab/errors.hpp"
#include "hochlab/gerstenhaber.hpp"
#include "hochlab/hopf.hpp"
#include "hochlab/instances.hpp"
#include "hochlab/obstruction.hpp"

namespace py = pybind11;
using namespace hochlab;

namespace {

// Reports cross the boundary as JSON text; the Python side decodes them.
std::string dump(const Json& j) { return j.dump(); }

std::map<std::pair<int, int>, std::size_t> nonzero(const std::map<std::pair<int, int>, std::size_t>& dims) {
  std::map<std::pair<int, int>, std::size_t> out;
  for (const auto& [b, n] : dims)
    if (n) out[b] = n;
  return out;
}

Element find_label(const GradedOperad& o, const std::string& label) {
  for (std::size_t n = 0; n <= o.max_arity(); ++n)
    if (auto e = o.find(n, label)) return *e;
  throw ParseError("no basis element labelled '" + label + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact Hochschild, cobar and obstruction computations for small chain operads";

  static py::exception<Error> error(m, "Error");
  static py::exception<NoSolution> no_solution(m, "NoSolution", error.ptr());
  static py::exception<NotACycle> not_a_cycle(m, "NotACycle", error.ptr());
  static py::exception<WindowBoundary> window_boundary(m, "WindowBoundary", error.ptr());
  static py::exception<ArityOverflow> arity_overflow(m, "ArityOverflow", error.ptr());
  static py::exception<LiftFailure> lift_failure(m, "LiftFailure", error.ptr());
  static py::exception<InvalidArgument> invalid_argument(m, "InvalidArgument", error.ptr());
  static py::exception<ParseError> parse_error(m, "ParseError", error.ptr());
  static py::exception<Inconclusive> inconclusive(m, "Inconclusive", error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const NoSolution& e) {
      no_solution(e.what());
    } catch (const NotACycle& e) {
      not_a_cycle(e.what());
    } catch (const WindowBoundary& e) {
      window_boundary(e.what());
    } catch (const ArityOverflow& e) {
      arity_overflow(e.what());
    } catch (const LiftFailure& e) {
      lift_failure(e.what());
    } catch (const InvalidArgument& e) {
      invalid_argument(e.what());
    } catch (const ParseError& e) {
      parse_error(e.what());
    } catch (const Inconclusive& e) {
      inconclusive(e.what());
    } catch (const Error& e) {
      error(e.what());
    }
  });

  m.def(
      "cobar_dims",
      [](int d, int p_min, int q_max, bool fixing) {
        auto ch = cobar_homology(build_so_hopf(d, fixing ? SoVariant::FixingSubgroup : SoVariant::Full), p_min, q_max);
        std::map<std::pair<int, int>, std::size_t> out;
        for (const auto& [b, c] : ch.cells)
          if (c.dimension) out[b] = c.dimension;
        return out;
      },
      py::arg("d"), py::arg("p_min"), py::arg("q_max"), py::arg("fixing_subgroup") = false);

  m.def(
      "hochschild_dims",
      [](const std::string& instance, std::size_t n_max, int q_max) {
        return nonzero(hochschild_homology(instance_by_name(instance), n_max, q_max).dims());
      },
      py::arg("instance"), py::arg("n_max"), py::arg("q_max"));

  m.def(
      "bracket",
      [](const std::string& instance, const std::string& x, const std::string& y) {
        auto s = instance_by_name(instance);
        const GradedOperad& o = *s.host;
        return o.format(bracket(o, find_label(o, x), find_label(o, y)));
      },
      py::arg("instance"), py::arg("x"), py::arg("y"));

  m.def(
      "poisson_image_check", [](int d) { return poisson_image_check(d).passed(); }, py::arg("d"));

  m.def(
      "framed_e2_check_json", [](int d, int p_min, int q_max) { return dump(to_json(framed_e2_check(d, p_min, q_max))); },
      py::arg("d"), py::arg("p_min"), py::arg("q_max"));

  m.def(
      "audit_json",
      [](int d, int p_min, int q_max, bool strict) {
        return dump(to_json(convergence_audit(framed_audit_input(d, p_min, q_max), strict)));
      },
      py::arg("d"), py::arg("p_min"), py::arg("q_max"), py::arg("strict") = false);

  m.def(
      "obstruction_json",
      [](const std::string& instance) {
        auto in = obstruction_input_by_name(instance);
        return dump(to_json(in, obstruction(in)));
      },
      py::arg("instance"));

  m.def(
      "d2_comparison_json", [](const std::string& instance) { return dump(to_json(compare_with_d2(obstruction_input_by_name(instance)))); },
      py::arg("instance"));

  m.def(
      "choice_independence_json",
      [](const std::string& instance, std::size_t trials, std::uint64_t seed) {
        return dump(to_json(choice_independence(obstruction_input_by_name(instance), trials, seed)));
      },
      py::arg("instance"), py::arg("trials") = 10, py::arg("seed") = 1);
}
