#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kmed/clarans.hpp"
#include "kmed/lloyd.hpp"
#include "kmed/medlloyd.hpp"
#include "kmed/pam.hpp"
#include "kmed/seeding.hpp"

namespace py = pybind11;
using namespace kmed;

namespace {

Dataset dataset_from_array(py::array_t<double, py::array::c_style | py::array::forcecast> arr) {
  if (arr.ndim() != 2) throw std::invalid_argument("expected a 2-D array");
  DenseData d;
  d.dim = static_cast<std::size_t>(arr.shape(1));
  d.values.assign(arr.data(), arr.data() + arr.size());
  return Dataset(std::move(d));
}

py::dict report_to_dict(const ClaransReport& r) {
  py::dict out;
  out["energy_trajectory"] = r.energyTrajectory;
  out["proposals_evaluated"] = r.proposalsEvaluated;
  out["swaps_accepted"] = r.swapsAccepted;
  out["swaps_rejected"] = r.swapsRejected;
  out["rejection_run_lengths"] = r.rejectionRunLengths;
  out["dcs_init"] = r.dcsInit;
  out["dcs_eval"] = r.dcsEval;
  out["dcs_update"] = r.dcsUpdate;
  out["seconds"] = r.seconds;
  return out;
}

StopCriterion stop_from_args(std::uint64_t rejections, std::uint64_t maxSwaps, double seconds) {
  if (maxSwaps > 0) return StopCriterion::swaps(maxSwaps);
  if (seconds > 0.0) return StopCriterion::timeLimit(seconds);
  return StopCriterion::rejections(rejections);
}

}  // namespace

PYBIND11_MODULE(_kmed, m) {
  m.doc() = "K-medoids clustering: swap-based local search with accelerated evaluation";

  m.def(
      "clarans",
      [](py::array_t<double, py::array::c_style | py::array::forcecast> x, std::size_t k,
         int level, std::uint64_t seed, const std::string& metric, const std::string& potential,
         std::uint64_t stop_rejections, std::uint64_t stop_max_swaps, double stop_seconds,
         const std::vector<std::uint32_t>& initial_centers) {
        const Dataset data = dataset_from_array(x);
        const MetricSpace ms(metric_from_name(metric));
        const Potential psi(potential_from_name(potential));
        EngineConfig cfg;
        cfg.level = level;
        cfg.rngSeed = seed;
        cfg.stop = stop_from_args(stop_rejections, stop_max_swaps, stop_seconds);
        cfg.initialCenters = initial_centers;
        ClaransResult r;
        {
          py::gil_scoped_release release;
          r = run_clarans(data, ms, psi, k, cfg);
        }
        py::dict rep = report_to_dict(r.report);
        rep["distance_calcs"] = ms.counter().total();
        return py::make_tuple(r.state.centers, std::vector<std::uint32_t>(r.state.a1), rep);
      },
      py::arg("x"), py::arg("k"), py::arg("level") = 2, py::arg("seed") = 0,
      py::arg("metric") = "l2", py::arg("potential") = "quadratic",
      py::arg("stop_rejections") = 0, py::arg("stop_max_swaps") = 0,
      py::arg("stop_seconds") = 0.0,
      py::arg("initial_centers") = std::vector<std::uint32_t>{},
      "Swap-based K-medoids. Returns (center_indices, assignments, report).");

  m.def(
      "medlloyd",
      [](py::array_t<double, py::array::c_style | py::array::forcecast> x, std::size_t k,
         std::uint64_t seed, const std::string& metric, const std::string& potential) {
        const Dataset data = dataset_from_array(x);
        const MetricSpace ms(metric_from_name(metric));
        const Potential psi(potential_from_name(potential));
        MedlloydConfig cfg;
        cfg.rngSeed = seed;
        const auto [st, rep] = run_medlloyd(data, ms, psi, k, cfg);
        py::dict out;
        out["iterations"] = rep.iterations;
        out["energy_trajectory"] = rep.energyTrajectory;
        return py::make_tuple(st.centers, std::vector<std::uint32_t>(st.a1), out);
      },
      py::arg("x"), py::arg("k"), py::arg("seed") = 0, py::arg("metric") = "l2",
      py::arg("potential") = "quadratic");

  m.def(
      "pam",
      [](py::array_t<double, py::array::c_style | py::array::forcecast> x,
         const std::vector<std::uint32_t>& initial_centers, const std::string& metric,
         const std::string& potential) {
        const Dataset data = dataset_from_array(x);
        const MetricSpace ms(metric_from_name(metric));
        const Potential psi(potential_from_name(potential));
        const auto [st, rep] = run_pam(data, ms, psi, initial_centers);
        py::dict out;
        out["sweeps"] = rep.sweeps;
        out["swaps"] = rep.swapsImplemented;
        out["energy_trajectory"] = rep.energyTrajectory;
        return py::make_tuple(st.centers, std::vector<std::uint32_t>(st.a1), out);
      },
      py::arg("x"), py::arg("initial_centers"), py::arg("metric") = "l2",
      py::arg("potential") = "quadratic");

  m.def(
      "kmeans_pp",
      [](py::array_t<double, py::array::c_style | py::array::forcecast> x, std::size_t k,
         std::uint64_t seed, const std::string& metric) {
        const Dataset data = dataset_from_array(x);
        const MetricSpace ms(metric_from_name(metric));
        Rng rng(substream_seed(seed, 0));
        return seed_kmpp(data, k, ms, rng);
      },
      py::arg("x"), py::arg("k"), py::arg("seed") = 0, py::arg("metric") = "l2");

  m.def(
      "lloyd",
      [](py::array_t<double, py::array::c_style | py::array::forcecast> x, std::size_t k,
         const std::vector<std::uint32_t>& initial_center_indices, std::uint64_t max_iterations) {
        const Dataset data = dataset_from_array(x);
        LloydConfig cfg;
        if (max_iterations > 0) cfg.maxIterations = max_iterations;
        const LloydResult r =
            run_lloyd(data, k, centers_from_indices(data, initial_center_indices), cfg);
        py::array_t<double> centers({k, r.dim});
        std::copy(r.centers.begin(), r.centers.end(), centers.mutable_data());
        return py::make_tuple(centers, r.assignments, r.mse, r.iterations);
      },
      py::arg("x"), py::arg("k"), py::arg("initial_center_indices"),
      py::arg("max_iterations") = 0,
      "K-means refinement. Returns (centers, assignments, mse, iterations).");

  m.def(
      "total_energy",
      [](py::array_t<double, py::array::c_style | py::array::forcecast> x,
         const std::vector<std::uint32_t>& centers, const std::string& metric,
         const std::string& potential) {
        const Dataset data = dataset_from_array(x);
        const MetricSpace ms(metric_from_name(metric));
        return total_energy(centers, data, ms, Potential(potential_from_name(potential)));
      },
      py::arg("x"), py::arg("centers"), py::arg("metric") = "l2",
      py::arg("potential") = "quadratic");
}
