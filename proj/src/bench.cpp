#include "kmed/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "kmed/lloyd.hpp"
#include "kmed/medlloyd.hpp"
#include "kmed/seeding.hpp"

namespace kmed {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct MethodPlan {
  std::string label;
  SeedingConfig::Method kind;
  bool hasStopOverride = false;
  StopCriterion stop;
};

RunRecord run_once(const Dataset& data, const BenchSpec& spec, const MethodPlan& plan,
                   std::uint64_t seed) {
  const MetricSpace metric(MetricKind::Euclidean);
  const Potential psi(PotentialKind::Quadratic);
  const std::size_t dim = data.dense().dim;
  RunRecord rec;

  SeedingConfig sc;
  sc.method = plan.kind;
  sc.rngSeed = seed;
  sc.bfPartitions = spec.bfPartitions;
  sc.numThreads = spec.numThreads;
  sc.clarans.level = spec.claransLevel;
  sc.clarans.stop = plan.hasStopOverride ? plan.stop : spec.claransStop;

  std::vector<double> initCenters;
  const auto tInit = Clock::now();
  if (plan.kind == SeedingConfig::Method::Clarans ||
      plan.kind == SeedingConfig::Method::KmppThenClarans) {
    EngineConfig ec = sc.clarans;
    ec.rngSeed = seed;
    if (plan.kind == SeedingConfig::Method::KmppThenClarans) {
      Rng rng(substream_seed(seed, 100));
      ec.initialCenters = seed_kmpp(data, spec.numClusters, metric, rng);
    }
    const std::uint64_t dcs0 = metric.counter().total();
    const ClaransResult r = run_clarans(data, metric, psi, spec.numClusters, ec);
    rec.swapEvaluations = r.report.proposalsEvaluated;
    rec.swapImplementations = r.report.swapsAccepted;
    rec.rejectionRuns = r.report.rejectionRunLengths;
    rec.energyTrajectory = r.report.energyTrajectory;
    rec.distanceCalcs = metric.counter().total() - dcs0;
    initCenters = centers_from_indices(data, r.state.centers);
  } else if (plan.kind == SeedingConfig::Method::Medlloyd) {
    MedlloydConfig mc;
    mc.rngSeed = seed;
    const std::uint64_t dcs0 = metric.counter().total();
    const auto [st, rep] = run_medlloyd(data, metric, psi, spec.numClusters, mc);
    rec.energyTrajectory = rep.energyTrajectory;
    rec.distanceCalcs = metric.counter().total() - dcs0;
    initCenters = centers_from_indices(data, st.centers);
  } else {
    const SeedResult s = seed_pipeline(data, spec.numClusters, metric, psi, sc);
    initCenters = s.isPoints ? s.points : centers_from_indices(data, s.indices);
    rec.hasInitMse = !s.isPoints;  // bf's mean-based init is not comparable
  }
  rec.initSeconds = elapsed_since(tInit);
  if (rec.hasInitMse) rec.initMse = dense_mse(data, dim, initCenters);

  const auto tRefine = Clock::now();
  rec.finalMse = run_lloyd(data, spec.numClusters, initCenters).mse;
  rec.refineSeconds = elapsed_since(tRefine);
  return rec;
}

}  // namespace

bool operator==(const RunRecord& a, const RunRecord& b) {
  return a.hasInitMse == b.hasInitMse && a.initMse == b.initMse && a.finalMse == b.finalMse &&
         a.initSeconds == b.initSeconds && a.refineSeconds == b.refineSeconds &&
         a.swapEvaluations == b.swapEvaluations &&
         a.swapImplementations == b.swapImplementations && a.rejectionRuns == b.rejectionRuns &&
         a.energyTrajectory == b.energyTrajectory && a.distanceCalcs == b.distanceCalcs;
}

bool operator==(const MethodReport& a, const MethodReport& b) {
  return a.method == b.method && a.runs == b.runs && a.hasInitMse == b.hasInitMse &&
         a.meanInitMse == b.meanInitMse && a.minFinalMse == b.minFinalMse &&
         a.meanFinalMse == b.meanFinalMse && a.stdFinalMse == b.stdFinalMse &&
         a.records == b.records;
}

bool operator==(const BenchReport& a, const BenchReport& b) {
  return a.numClusters == b.numClusters && a.normalization == b.normalization &&
         a.methods == b.methods;
}

BenchReport run_benchmark(const Dataset& data, const BenchSpec& spec) {
  if (data.kind() != DataKind::Dense)
    throw std::invalid_argument("run_benchmark: dense vector data required");
  if (spec.methods.empty()) throw std::invalid_argument("run_benchmark: no methods given");
  if (spec.fixedRepeats == 0 && spec.timeLimitSeconds <= 0.0 && spec.timeLimitMultiple <= 0.0)
    throw std::invalid_argument("run_benchmark: time limit must be positive");

  // resolve every method name before any run
  std::vector<MethodPlan> plans;
  const bool needCalibration =
      (spec.fixedRepeats == 0 && spec.timeLimitSeconds <= 0.0) || !spec.itok.empty();
  double kmppLloydSeconds = 0.0;
  if (needCalibration) {
    const MetricSpace metric(MetricKind::Euclidean);
    const auto t0 = Clock::now();
    Rng rng(substream_seed(spec.rngSeed, 999));
    const auto idx = seed_kmpp(data, spec.numClusters, metric, rng);
    run_lloyd(data, spec.numClusters, centers_from_indices(data, idx));
    kmppLloydSeconds = elapsed_since(t0);
  }
  for (const auto& name : spec.methods) {
    const SeedingConfig::Method kind = seeding_method_from_name(name);
    if (kind == SeedingConfig::Method::Clarans && !spec.itok.empty()) {
      for (const double t : spec.itok) {
        MethodPlan p;
        p.label = name + "@itok=" + std::to_string(t);
        while (p.label.back() == '0') p.label.pop_back();
        if (p.label.back() == '.') p.label.pop_back();
        p.kind = kind;
        p.hasStopOverride = true;
        p.stop = StopCriterion::timeLimit(t * kmppLloydSeconds);
        plans.push_back(std::move(p));
      }
    } else {
      plans.push_back({name, kind, false, {}});
    }
  }

  const double timeLimit =
      spec.timeLimitSeconds > 0.0 ? spec.timeLimitSeconds
                                  : spec.timeLimitMultiple * kmppLloydSeconds;

  BenchReport report;
  report.numClusters = spec.numClusters;
  for (std::size_t mi = 0; mi < plans.size(); ++mi) {
    MethodReport mr;
    mr.method = plans[mi].label;
    const auto t0 = Clock::now();
    std::uint64_t runIdx = 0;
    while (true) {
      if (spec.fixedRepeats > 0) {
        if (runIdx >= spec.fixedRepeats) break;
      } else {
        if (elapsed_since(t0) >= timeLimit) break;  // no new runs after the limit
        if (spec.repeatsCap > 0 && runIdx >= spec.repeatsCap) break;
      }
      const std::uint64_t seed = substream_seed(spec.rngSeed, (mi + 1) * 1000003ULL + runIdx);
      RunRecord rec = run_once(data, spec, plans[mi], seed);
      if (spec.fixedRepeats > 0) rec.initSeconds = rec.refineSeconds = 0.0;  // reproducible
      mr.records.push_back(std::move(rec));
      ++runIdx;
    }
    mr.runs = mr.records.size();
    report.methods.push_back(std::move(mr));
  }

  // normalize to the mean raw kmpp init MSE, when kmpp ran
  report.normalization = 1.0;
  for (const auto& mr : report.methods) {
    if (mr.method == "kmpp" && mr.runs > 0) {
      double s = 0.0;
      for (const auto& r : mr.records) s += r.initMse;
      report.normalization = s / static_cast<double>(mr.runs);
      break;
    }
  }
  for (auto& mr : report.methods) {
    mr.hasInitMse = !mr.records.empty() && mr.records.front().hasInitMse;
    if (mr.runs == 0) continue;
    double initSum = 0.0, finSum = 0.0, finMin = mr.records.front().finalMse;
    for (const auto& r : mr.records) {
      initSum += r.initMse;
      finSum += r.finalMse;
      finMin = std::min(finMin, r.finalMse);
    }
    const double n = static_cast<double>(mr.runs);
    const double finMean = finSum / n;
    double var = 0.0;
    for (const auto& r : mr.records) var += (r.finalMse - finMean) * (r.finalMse - finMean);
    mr.meanInitMse = mr.hasInitMse ? (initSum / n) / report.normalization : 0.0;
    mr.minFinalMse = finMin / report.normalization;
    mr.meanFinalMse = finMean / report.normalization;
    mr.stdFinalMse = std::sqrt(var / n) / report.normalization;
  }
  return report;
}

ReportFormat report_format_from_name(const std::string& name) {
  if (name == "structured-json" || name == "json") return ReportFormat::StructuredJson;
  if (name == "csv-table" || name == "csv") return ReportFormat::CsvTable;
  if (name == "plot-data" || name == "plot") return ReportFormat::PlotData;
  throw std::invalid_argument("unknown report format: " + name);
}

namespace {

using json = nlohmann::ordered_json;

json record_to_json(const RunRecord& r) {
  json j;
  j["has_init_mse"] = r.hasInitMse;
  j["init_mse"] = r.initMse;
  j["final_mse"] = r.finalMse;
  j["init_seconds"] = r.initSeconds;
  j["refine_seconds"] = r.refineSeconds;
  j["swap_evaluations"] = r.swapEvaluations;
  j["swap_implementations"] = r.swapImplementations;
  j["rejection_runs"] = r.rejectionRuns;
  j["energy_trajectory"] = r.energyTrajectory;
  j["distance_calcs"] = r.distanceCalcs;
  return j;
}

RunRecord record_from_json(const json& j) {
  RunRecord r;
  r.hasInitMse = j.at("has_init_mse").get<bool>();
  r.initMse = j.at("init_mse").get<double>();
  r.finalMse = j.at("final_mse").get<double>();
  r.initSeconds = j.at("init_seconds").get<double>();
  r.refineSeconds = j.at("refine_seconds").get<double>();
  r.swapEvaluations = j.at("swap_evaluations").get<std::uint64_t>();
  r.swapImplementations = j.at("swap_implementations").get<std::uint64_t>();
  r.rejectionRuns = j.at("rejection_runs").get<std::vector<std::uint64_t>>();
  r.energyTrajectory = j.at("energy_trajectory").get<std::vector<double>>();
  r.distanceCalcs = j.at("distance_calcs").get<std::uint64_t>();
  return r;
}

void emit_json(const BenchReport& report, const std::string& path) {
  json j;
  j["num_clusters"] = report.numClusters;
  j["normalization"] = report.normalization;
  j["methods"] = json::array();
  for (const auto& m : report.methods) {
    json jm;
    jm["method"] = m.method;
    jm["runs"] = m.runs;
    jm["has_init_mse"] = m.hasInitMse;
    jm["mean_init_mse"] = m.meanInitMse;
    jm["min_final_mse"] = m.minFinalMse;
    jm["mean_final_mse"] = m.meanFinalMse;
    jm["std_final_mse"] = m.stdFinalMse;
    jm["records"] = json::array();
    for (const auto& r : m.records) jm["records"].push_back(record_to_json(r));
    j["methods"].push_back(std::move(jm));
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
}

void emit_csv(const BenchReport& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "stat";
  for (const auto& m : report.methods) out << ',' << m.method;
  out << '\n';
  auto row = [&](const std::string& stat, auto get) {
    out << stat;
    for (const auto& m : report.methods) {
      out << ',';
      get(m);
    }
    out << '\n';
  };
  row("runs", [&](const MethodReport& m) { out << m.runs; });
  row("mean_init_mse", [&](const MethodReport& m) {
    if (m.hasInitMse) out << m.meanInitMse;
  });
  row("min_final_mse", [&](const MethodReport& m) { out << m.minFinalMse; });
  row("mean_final_mse", [&](const MethodReport& m) { out << m.meanFinalMse; });
  row("std_final_mse", [&](const MethodReport& m) { out << m.stdFinalMse; });
}

void emit_plot_data(const BenchReport& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (const auto& m : report.methods) {
    out << "# series " << m.method << " final_mse\n";
    for (std::size_t j = 0; j < m.records.size(); ++j)
      out << j << ' ' << m.records[j].finalMse << '\n';
    for (std::size_t j = 0; j < m.records.size(); ++j) {
      const auto& r = m.records[j];
      if (!r.energyTrajectory.empty()) {
        out << "# series " << m.method << " run" << j << " energy_trajectory\n";
        for (std::size_t t = 0; t < r.energyTrajectory.size(); ++t)
          out << t << ' ' << r.energyTrajectory[t] << '\n';
      }
      if (!r.rejectionRuns.empty()) {
        out << "# series " << m.method << " run" << j << " rejections\n";
        for (std::size_t t = 0; t < r.rejectionRuns.size(); ++t)
          out << t << ' ' << r.rejectionRuns[t] << '\n';
      }
    }
  }
}

}  // namespace

void emit_report(const BenchReport& report, ReportFormat fmt, const std::string& path) {
  switch (fmt) {
    case ReportFormat::StructuredJson: emit_json(report, path); break;
    case ReportFormat::CsvTable: emit_csv(report, path); break;
    case ReportFormat::PlotData: emit_plot_data(report, path); break;
  }
}

BenchReport load_report_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  in >> j;
  BenchReport report;
  report.numClusters = j.at("num_clusters").get<std::size_t>();
  report.normalization = j.at("normalization").get<double>();
  for (const auto& jm : j.at("methods")) {
    MethodReport m;
    m.method = jm.at("method").get<std::string>();
    m.runs = jm.at("runs").get<std::uint64_t>();
    m.hasInitMse = jm.at("has_init_mse").get<bool>();
    m.meanInitMse = jm.at("mean_init_mse").get<double>();
    m.minFinalMse = jm.at("min_final_mse").get<double>();
    m.meanFinalMse = jm.at("mean_final_mse").get<double>();
    m.stdFinalMse = jm.at("std_final_mse").get<double>();
    for (const auto& jr : jm.at("records")) m.records.push_back(record_from_json(jr));
    report.methods.push_back(std::move(m));
  }
  return report;
}

}  // namespace kmed
