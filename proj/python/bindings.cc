// Copyright 2026 The sbmrd Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sbmrd/errors.h"
#include "sbmrd/models.h"
#include "sbmrd/numerics.h"
#include "sbmrd/oracle.h"
#include "sbmrd/rdf.h"
#include "sbmrd/simulate.h"
#include "sbmrd/waterfill.h"

namespace py = pybind11;

namespace sbmrd {
namespace {

SbmParams MakeSbm(std::int64_t n, std::vector<double> p,
                  std::vector<std::vector<double>> w) {
  SbmParams params;
  params.n = n;
  params.p = ProbVector(std::move(p));
  params.w = SymMatrix(w);
  return ValidateSbm(std::move(params));
}

ErParams MakeEr(std::int64_t n, double p) { return ValidateEr({n, p}); }

InhomErParams MakeInhomEr(std::int64_t n, std::vector<double> edge_probs) {
  return ValidateInhomEr({n, std::move(edge_probs)});
}

py::dict SimReportDict(const SimReport& r) {
  py::dict d;
  d["trials"] = r.trials;
  d["mean_distortion"] = r.mean_distortion;
  d["std_error"] = r.std_error ? py::cast(*r.std_error) : py::none();
  d["target_distortion"] = r.target_distortion;
  d["analytic_rate"] = r.analytic_rate;
  if (!r.pair_tallies.empty()) {
    const std::size_t k = r.dstar.order();
    py::list pairs;
    for (std::size_t l = 0; l < k; ++l) {
      for (std::size_t m = l; m < k; ++m) {
        const PairTally& t = r.pair_tallies[l * k + m];
        py::dict row;
        row["l"] = l;
        row["m"] = m;
        row["pairs"] = t.edges;
        row["flips"] = t.flips;
        row["reproduced"] = t.reproduced;
        row["dstar"] = r.dstar(l, m);
        pairs.append(row);
      }
    }
    d["label_pairs"] = pairs;
  }
  return d;
}

}  // namespace
}  // namespace sbmrd

PYBIND11_MODULE(_core, m) {
  using namespace sbmrd;
  m.doc() = "Rate-distortion functions of stochastic block model graphs";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", error.ptr());
  py::register_exception<InvalidParams>(m, "InvalidParams", error.ptr());
  py::register_exception<DimensionError>(m, "DimensionError", error.ptr());
  py::register_exception<InfeasibleError>(m, "InfeasibleError", error.ptr());
  py::register_exception<NonConvergenceError>(m, "NonConvergenceError",
                                              error.ptr());

  py::class_<SbmParams>(m, "SbmParams")
      .def(py::init(&MakeSbm), py::arg("n"), py::arg("p"), py::arg("W"))
      .def_readonly("n", &SbmParams::n)
      .def_property_readonly("k", &SbmParams::k)
      .def_property_readonly(
          "p",
          [](const SbmParams& s) {
            return std::vector<double>(s.p.values().begin(),
                                       s.p.values().end());
          })
      .def_property_readonly("W",
                             [](const SbmParams& s) { return s.w.Rows(); });

  py::class_<ErParams>(m, "ErParams")
      .def(py::init(&MakeEr), py::arg("n"), py::arg("p"))
      .def_readonly("n", &ErParams::n)
      .def_readonly("p", &ErParams::p);

  py::class_<InhomErParams>(m, "InhomErParams")
      .def(py::init(&MakeInhomEr), py::arg("n"), py::arg("edge_probs"))
      .def_readonly("n", &InhomErParams::n)
      .def_readonly("edge_probs", &InhomErParams::edge_probs);

  py::class_<RdCurvePoint>(m, "RdCurvePoint")
      .def_readonly("distortion_abs", &RdCurvePoint::distortion_abs)
      .def_readonly("distortion_per_edge", &RdCurvePoint::distortion_per_edge)
      .def_readonly("rate_bits", &RdCurvePoint::rate_bits)
      .def_readonly("water_level", &RdCurvePoint::water_level);

  py::class_<SbmAllocation>(m, "SbmAllocation")
      .def_property_readonly("dstar",
                             [](const SbmAllocation& a) { return a.dstar.Rows(); })
      .def_readonly("mu", &SbmAllocation::mu)
      .def_readonly("normalized_distortion",
                    &SbmAllocation::normalized_distortion);

  py::class_<ErAllocation>(m, "ErAllocation")
      .def_readonly("d", &ErAllocation::d)
      .def_readonly("lambda_", &ErAllocation::lambda);

  py::class_<KktCertificate>(m, "KktCertificate")
      .def_readonly("nu", &KktCertificate::nu)
      .def_readonly("max_multiplier_violation",
                    &KktCertificate::max_multiplier_violation)
      .def_readonly("max_slackness_residual",
                    &KktCertificate::max_slackness_residual)
      .def_readonly("constraint_residual", &KktCertificate::constraint_residual)
      .def_readonly("max_cap_excess", &KktCertificate::max_cap_excess)
      .def("holds", &KktCertificate::Holds, py::arg("tol"));

  py::class_<OracleResult>(m, "OracleResult")
      .def_readonly("rate_bits", &OracleResult::rate_bits)
      .def_readonly("achieved_distortion", &OracleResult::achieved_distortion)
      .def_readonly("iterations", &OracleResult::iterations)
      .def_readonly("converged", &OracleResult::converged)
      .def_readonly("slope", &OracleResult::slope);

  m.def("binary_entropy", &BinaryEntropy, py::arg("x"));
  m.def("conditional_entropy", &SbmConditionalEntropy, py::arg("params"));
  m.def(
      "entropy_interval",
      [](const SbmParams& s) {
        const EntropyInterval e = SbmEntropyInterval(s);
        return py::make_tuple(e.lower, e.upper);
      },
      py::arg("params"));
  m.def("er_entropy", &ErEntropy, py::arg("params"));
  m.def("inhom_er_entropy", &InhomogeneousErEntropy, py::arg("params"));

  m.def(
      "rdf",
      [](const ModelParams& params, double d) { return EvaluateRdf(params, d); },
      py::arg("params"), py::arg("D"));
  m.def(
      "rdf_interval",
      [](const SbmParams& s, double d) {
        const RateInterval r = SbmRdfInterval(s, d);
        return py::make_tuple(r.lower, r.upper);
      },
      py::arg("params"), py::arg("D"));
  m.def("zero_rate_boundary", &ZeroRateBoundary, py::arg("params"));
  m.def(
      "rdf_curve",
      [](const ModelParams& params, std::vector<double> grid,
         unsigned threads) { return RdfCurve(params, grid, threads); },
      py::arg("params"), py::arg("grid"), py::arg("threads") = 1);
  m.def("uniform_grid", &UniformGrid, py::arg("params"), py::arg("points"));

  m.def("waterfill", &SolveSbmWaterfill, py::arg("params"), py::arg("D"));
  m.def("er_waterfill", &SolveErWaterfill, py::arg("params"), py::arg("D"));
  m.def("certify", &CertifySbmAllocation, py::arg("params"),
        py::arg("allocation"), py::arg("D"));
  m.def("certify_er", &CertifyErAllocation, py::arg("params"),
        py::arg("allocation"), py::arg("D"));

  m.def(
      "joint_oracle",
      [](std::vector<double> edge_probs, double d) {
        return JointGraphRdfOracle(edge_probs, d);
      },
      py::arg("edge_probs"), py::arg("D"),
      py::call_guard<py::gil_scoped_release>());
  m.def(
      "conditional_oracle",
      [](const SbmParams& s, double d) {
        return ConditionalSbmOracle(s, d).aggregate;
      },
      py::arg("params"), py::arg("D"),
      py::call_guard<py::gil_scoped_release>());

  m.def(
      "simulate",
      [](const SbmParams& s, double d, std::uint64_t trials,
         std::uint64_t seed, unsigned threads) {
        SimReport r;
        {
          py::gil_scoped_release release;
          r = MonteCarloDistortion(s, d, trials, RngSpec{seed, 0}, threads);
        }
        return SimReportDict(r);
      },
      py::arg("params"), py::arg("D"), py::arg("trials") = 1000,
      py::arg("seed") = 0, py::arg("threads") = 1);
}
