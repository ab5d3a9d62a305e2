#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "bsmooth/convex.hpp"
#include "bsmooth/error.hpp"
#include "bsmooth/eval.hpp"
#include "bsmooth/profiles.hpp"
#include "bsmooth/profiling.hpp"
#include "bsmooth/simulator.hpp"
#include "bsmooth/smoothing.hpp"
#include "bsmooth/vectors.hpp"

namespace py = pybind11;
using namespace bsmooth;

namespace {

ScoringVector scores(const std::vector<double>& v) { return ScoringVector(v); }
CountsVector counts(const std::vector<std::uint64_t>& v) { return CountsVector(v); }

std::vector<double> to_list(const ScoringVector& v) {
  return {v.values().begin(), v.values().end()};
}

std::vector<std::uint64_t> to_list(const CountsVector& n) {
  return {n.counts().begin(), n.counts().end()};
}

py::tuple to_tuple(const Weights& w) { return py::make_tuple(w.prior(), w.evidence()); }

}  // namespace

PYBIND11_MODULE(_bsmooth, m) {
  m.doc() = "Entropy-weighted smoothing of ranked scores with user feedback.";

  // Kept alive by the module attribute; a plain pointer avoids destruction at exit.
  static PyObject* error_type = PyErr_NewException("bsmooth._bsmooth.BsmoothError", PyExc_ValueError, nullptr);
  m.attr("BsmoothError") = py::handle(error_type);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::gil_scoped_acquire gil;
      py::object exc = py::reinterpret_borrow<py::object>(error_type)(py::str(e.what()));
      exc.attr("code") = py::str(std::string(to_string(e.code())));
      PyErr_SetObject(error_type, exc.ptr());
    }
  });

  m.def("normalized_entropy", [](const std::vector<double>& v) { return normalized_entropy(scores(v)); },
        py::arg("scores"));
  m.def("normalize_counts", [](const std::vector<std::uint64_t>& n) { return to_list(normalize_counts(counts(n))); },
        py::arg("counts"));
  m.def("from_weights", [](const std::vector<double>& w) { return to_list(ScoringVector::from_weights(w)); },
        py::arg("weights"));
  m.def(
      "combine",
      [](const std::vector<double>& x, const std::vector<double>& y, double evidence) {
        return to_list(combine(scores(x), scores(y), Weights::from_evidence(evidence)));
      },
      py::arg("prior"), py::arg("evidence"), py::arg("evidence_weight"));
  m.def("top_bins", [](const std::vector<double>& v) { return top_bins(scores(v)); }, py::arg("scores"));
  m.def(
      "disagreed_top_bins",
      [](const std::vector<double>& x, const std::vector<double>& y) -> std::optional<py::tuple> {
        const auto d = disagreed_top_bins(scores(x), scores(y));
        if (!d) return std::nullopt;
        return py::make_tuple(d->t, d->u);
      },
      py::arg("prior"), py::arg("evidence"));
  m.def(
      "balance_top",
      [](const std::vector<double>& x, const std::vector<double>& y) {
        return to_tuple(balance_top(scores(x), scores(y)));
      },
      py::arg("prior"), py::arg("evidence"),
      "(prior weight, evidence weight) that ties the disagreeing top bins.");

  py::class_<WeightingProfile>(m, "Profile")
      .def_static("mle", &WeightingProfile::mle)
      .def_static("step", &WeightingProfile::step, py::arg("threshold"))
      .def_static("linear", &WeightingProfile::linear)
      .def_static("logit", &WeightingProfile::logit, py::arg("beta0"), py::arg("beta"))
      .def_static("parse", [](const std::string& text) { return parse_profile(text); }, py::arg("text"))
      .def_static("load", &load_profile, py::arg("path"))
      .def_property_readonly("kind", [](const WeightingProfile& p) { return std::string(to_string(p.kind())); })
      .def_property_readonly("threshold", &WeightingProfile::threshold)
      .def_property_readonly("beta0", &WeightingProfile::beta0)
      .def_property_readonly("beta", &WeightingProfile::beta)
      .def("weight", &WeightingProfile::weight_of_evidence, py::arg("entropy"))
      .def("serialize", [](const WeightingProfile& p) { return serialize_profile(p); })
      .def("save", [](const WeightingProfile& p, const std::string& path) { save_profile(p, path); },
           py::arg("path"))
      .def("__repr__", [](const WeightingProfile& p) {
        return "<Profile " + std::string(to_string(p.kind())) + ">";
      });

  m.def(
      "smooth",
      [](const std::vector<double>& x, const std::vector<std::uint64_t>& n, const WeightingProfile& profile) {
        const auto r = bsmooth::bsmooth(scores(x), counts(n), profile);
        py::dict out;
        out["posterior"] = to_list(r.posterior);
        out["evidence_weight"] = r.evidence_weight;
        out["evidence_entropy"] = r.evidence_entropy;
        out["alpha_scale"] = r.alpha_scale;
        return out;
      },
      py::arg("prior"), py::arg("counts"), py::arg("profile"));

  m.def("invert_binary_entropy", [](double h) { return to_list(invert_binary_entropy(h)); }, py::arg("entropy"));
  m.def(
      "fit_profile",
      [](const std::vector<std::vector<double>>& population, double threshold, double delta) {
        ProfilingConfig cfg{threshold, delta, {}};
        for (const auto& v : population) cfg.population.emplace_back(v);
        const auto r = priors_profiling_report(cfg);
        py::dict out;
        out["mean_entropy"] = r.mean_entropy;
        out["prior2"] = to_list(r.prior2);
        out["balance_weight"] = r.balance_weight;
        out["neighborhood_weight"] = r.neighborhood_weight;
        out["lack_of_fit"] = r.fit.lack_of_fit;
        out["profile"] = r.profile;
        return out;
      },
      py::arg("population"), py::arg("threshold") = 0.75, py::arg("delta") = 0.05);

  m.def("simulate_random", [](std::size_t k, std::uint64_t seed) { return to_list(simulate_random(k, seed)); },
        py::arg("k"), py::arg("seed"));
  m.def(
      "simulate_implicit",
      [](const std::vector<double>& preference, std::size_t default_option, double abandonment,
         double laziness, std::uint64_t sessions, std::uint64_t seed) {
        SessionModel model{abandonment, laziness, scores(preference), default_option, sessions, seed};
        return to_list(simulate_implicit(model));
      },
      py::arg("preference"), py::arg("default_option"), py::arg("abandonment") = 0.6,
      py::arg("laziness") = 0.05, py::arg("sessions") = 10, py::arg("seed") = 0);

  m.def("ranking", [](const std::vector<double>& v) { return rank("", scores(v)).ranking; },
        py::arg("scores"), "Option indices by descending score, ties by index.");
  m.def(
      "reciprocal_rank",
      [](const std::vector<double>& v, std::size_t answer) {
        return reciprocal_rank(rank("q", scores(v)), AnswerKey{{"q", answer}});
      },
      py::arg("scores"), py::arg("answer"));
}
