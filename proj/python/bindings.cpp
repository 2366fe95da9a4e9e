#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qcatalog/cli.hpp"
#include "qcatalog/epr.hpp"
#include "qcatalog/errors.hpp"
#include "qcatalog/lattice.hpp"
#include "qcatalog/measurement.hpp"
#include "qcatalog/prediction.hpp"
#include "qcatalog/rng.hpp"
#include "qcatalog/version.hpp"

namespace py = pybind11;
using namespace pybind11::literals;

namespace {

qcat::Rational to_rational(long long num, long long den) {
  if (den == 0) throw qcat::DomainError("denominator must be nonzero");
  return {num, den};
}

py::dict distribution_to_dict(const qcat::OutcomeDistribution& d) {
  py::dict out;
  for (const auto& o : d.outcomes()) out[py::float_(o.label)] = o.probability;
  return out;
}

py::dict record_to_dict(const qcat::FrequencyRecord& r) {
  py::dict counts;
  for (const auto& [label, count] : r.counts) counts[py::float_(label)] = count;
  return py::dict("trials"_a = r.trials, "counts"_a = counts, "seed"_a = r.seed, "prng"_a = r.prng);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Finite-dimensional quantum prediction engine";
  m.attr("__version__") = std::string(qcat::kVersion);
  m.attr("PRNG") = std::string(qcat::Rng::kAlgorithm);

  auto base = py::register_exception<qcat::Error>(m, "Error");
  py::register_exception<qcat::DimensionError>(m, "DimensionError", base.ptr());
  py::register_exception<qcat::DomainError>(m, "DomainError", base.ptr());
  py::register_exception<qcat::ImpossibleOutcome>(m, "ImpossibleOutcome", base.ptr());
  py::register_exception<qcat::InvariantViolation>(m, "InvariantViolation", base.ptr());

  // hilbert

  py::class_<qcat::StateVector>(m, "StateVector")
      .def(py::init<qcat::Vector>(), "amplitudes"_a)
      .def_static("normalized", &qcat::StateVector::normalized, "vector"_a)
      .def_static("basis", &qcat::StateVector::basis, "dim"_a, "k"_a)
      .def_property_readonly("dim", &qcat::StateVector::dim)
      .def_property_readonly("amplitudes", &qcat::StateVector::amplitudes);

  py::class_<qcat::Observable>(m, "Observable")
      .def(py::init([](const qcat::Matrix& mat) {
             return qcat::spectral_decompose(qcat::ComplexMatrix(mat));
           }),
           "matrix"_a)
      .def_property_readonly("dim", &qcat::Observable::dim)
      .def_property_readonly("matrix",
                             [](const qcat::Observable& o) { return o.matrix().entries(); })
      .def_property_readonly("eigenvalues",
                             [](const qcat::Observable& o) {
                               std::vector<double> v;
                               for (const auto& t : o.spectrum()) v.push_back(t.eigenvalue);
                               return v;
                             })
      .def_property_readonly("projectors", [](const qcat::Observable& o) {
        std::vector<qcat::Matrix> v;
        for (const auto& t : o.spectrum()) v.push_back(t.projector.entries());
        return v;
      });

  m.def("inner_product", &qcat::inner_product, "a"_a, "b"_a);
  m.def(
      "born_probability",
      [](const qcat::StateVector& s, const qcat::Matrix& p) {
        return qcat::born_probability(s, qcat::ComplexMatrix(p));
      },
      "state"_a, "projector"_a);
  m.def(
      "evolve",
      [](const qcat::StateVector& s, const qcat::Observable& h, double t, double hbar) {
        return qcat::evolve(s, h, qcat::EvolutionConfig{hbar, t});
      },
      "state"_a, "hamiltonian"_a, "t"_a, "hbar"_a = 1.0);
  m.def("tensor_state", &qcat::tensor_state, "a"_a, "b"_a);
  m.def(
      "tensor_op",
      [](const qcat::Matrix& a, const qcat::Matrix& b) {
        return qcat::tensor_op(qcat::ComplexMatrix(a), qcat::ComplexMatrix(b)).entries();
      },
      "a"_a, "b"_a);

  // lattice

  py::class_<qcat::Subspace>(m, "Subspace")
      .def_static("span", py::overload_cast<const qcat::Matrix&>(&qcat::Subspace::span),
                  "vectors"_a)
      .def_static("zero", &qcat::Subspace::zero, "ambient_dim"_a)
      .def_static("full", &qcat::Subspace::full, "ambient_dim"_a)
      .def_property_readonly("ambient_dim", &qcat::Subspace::ambient_dim)
      .def_property_readonly("rank", &qcat::Subspace::rank)
      .def_property_readonly("basis", &qcat::Subspace::basis)
      .def("__eq__", &qcat::equal);

  m.def("leq", &qcat::leq);
  m.def("meet", &qcat::meet);
  m.def("join", &qcat::join);
  m.def("orthocomplement", &qcat::orthocomplement);
  m.def("disjunction", &qcat::disjunction);
  m.def("commutes", &qcat::commutes);
  m.def("distributivity_holds", &qcat::distributivity_holds);
  m.def("boolean_sublattice", [](const qcat::Observable& o) {
    const auto b = qcat::boolean_sublattice(o);
    return py::make_tuple(b.elements, b.distributive);
  });

  // prediction

  m.def(
      "binomial_pmf",
      [](unsigned n, unsigned trials, long long num, long long den) {
        return qcat::binomial_pmf(n, trials, to_rational(num, den));
      },
      "n"_a, "trials"_a, "p_num"_a, "p_den"_a);
  m.def(
      "state_distribution",
      [](const qcat::StateVector& s, const qcat::Observable& o) {
        return distribution_to_dict(qcat::state_distribution(s, o));
      },
      "state"_a, "observable"_a);
  m.def(
      "sample_frequencies",
      [](const qcat::StateVector& s, const qcat::Observable& o, std::uint64_t trials,
         std::uint64_t seed) {
        return record_to_dict(qcat::sample_frequencies(qcat::state_distribution(s, o), trials, seed));
      },
      "state"_a, "observable"_a, "trials"_a, "seed"_a);

  // measurement

  m.def(
      "collapse",
      [](const qcat::StateVector& s, const qcat::Matrix& p) {
        return qcat::collapse(s, qcat::ComplexMatrix(p));
      },
      "state"_a, "projector"_a);
  m.def(
      "von_neumann_mixture",
      [](const qcat::StateVector& s, const qcat::Observable& o) {
        return qcat::von_neumann_mixture(s, o).matrix().entries();
      },
      "state"_a, "observable"_a);
  m.def("premeasurement", &qcat::premeasurement, "system"_a, "observable"_a, "apparatus_ready"_a);
  m.def(
      "partial_trace",
      [](const qcat::Matrix& rho, std::size_t dim_first, std::size_t dim_second, bool keep_first) {
        return qcat::partial_trace(qcat::DensityOperator(qcat::ComplexMatrix(rho)), dim_first,
                                   dim_second, keep_first ? qcat::Factor::kFirst : qcat::Factor::kSecond)
            .matrix()
            .entries();
      },
      "rho"_a, "dim_first"_a, "dim_second"_a, "keep_first"_a = true);
  m.def(
      "interference_norm",
      [](const qcat::Matrix& rho, const qcat::Observable& o) {
        return qcat::interference_norm(qcat::DensityOperator(qcat::ComplexMatrix(rho)), o);
      },
      "rho"_a, "observable"_a);
  m.def(
      "sample_measurement",
      [](const qcat::StateVector& s, const qcat::Observable& o, std::uint64_t seed) {
        auto r = qcat::sample_measurement(s, o, seed);
        return py::make_tuple(r.eigenvalue, r.probability, r.post_state);
      },
      "state"_a, "observable"_a, "seed"_a);

  // epr

  py::class_<qcat::Direction>(m, "Direction")
      .def(py::init<double, double>(), "theta"_a, "phi"_a = 0.0)
      .def_static("planar", &qcat::Direction::planar, "angle"_a)
      .def_property_readonly("theta", &qcat::Direction::theta)
      .def_property_readonly("phi", &qcat::Direction::phi);

  m.def("singlet", &qcat::singlet);
  m.def("spin_observable", &qcat::spin_observable, "direction"_a);
  m.def(
      "joint_distribution",
      [](const qcat::Direction& a, const qcat::Direction& b) {
        const auto d = qcat::joint_distribution(a, b);
        py::dict out;
        for (int x : {-1, 1}) {
          for (int y : {-1, 1}) out[py::make_tuple(x, y)] = d.probability(x, y);
        }
        return out;
      },
      "alice"_a, "bob"_a);
  m.def("correlation", &qcat::correlation, "alice"_a, "bob"_a);
  m.def("chsh", &qcat::chsh, "a"_a, "a_prime"_a, "b"_a, "b_prime"_a);
  m.def("lhv_chsh_bound", &qcat::lhv_chsh_bound);
  m.def(
      "run_trials_csv",
      [](const std::vector<qcat::Direction>& a, const std::vector<qcat::Direction>& b,
         std::uint64_t n, std::uint64_t seed) {
        std::ostringstream os;
        qcat::write_trial_log_csv(qcat::run_trials(a, b, n, seed), os);
        return os.str();
      },
      "alice_settings"_a, "bob_settings"_a, "n"_a, "seed"_a);
  m.def(
      "postselect",
      [](const std::vector<qcat::Direction>& a, const std::vector<qcat::Direction>& b,
         std::uint64_t n, std::uint64_t seed, int alice_outcome, const qcat::Direction& alice_dir) {
        const auto log = qcat::run_trials(a, b, n, seed);
        py::list out;
        for (const auto& e : qcat::postselect(log, alice_outcome, alice_dir)) {
          out.append(py::dict("bob_dir"_a = e.bob_dir, "observed"_a = record_to_dict(e.observed),
                              "predicted"_a = distribution_to_dict(e.predicted)));
        }
        return out;
      },
      "alice_settings"_a, "bob_settings"_a, "n"_a, "seed"_a, "alice_outcome"_a, "alice_dir"_a);

  // cli

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::vector<const char*> argv{"qcat"};
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        const int code = qcat::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      "args"_a);
}
