#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kmed/bench.hpp"
#include "kmed/dataio.hpp"
#include "kmed/datagen.hpp"
#include "kmed/lloyd.hpp"
#include "kmed/medlloyd.hpp"
#include "kmed/pam.hpp"
#include "kmed/seeding.hpp"

namespace {

std::size_t default_threads() {
  if (const char* env = std::getenv("KMED_THREADS")) {
    const long v = std::atol(env);
    if (v > 0) return static_cast<std::size_t>(v);
  }
  return 1;
}

struct GenOptions {
  std::string kind = "grid";
  std::size_t gridSide = 20;
  std::size_t pointsPerCluster = 100;
  double sigma = 0.0625;
  std::size_t numCenters = 0;
  std::size_t samplesPerCenter = 0;
  std::size_t numSamples = 0;
  std::uint64_t seed = 0;
  std::string out;
  std::string format;
  std::string centersOut;
};

kmed::DataFormat default_format(const std::string& kind) {
  if (kind == "syn1") return kmed::DataFormat::LinesOfText;
  if (kind == "syn2") return kmed::DataFormat::SparseSvm;
  return kmed::DataFormat::DenseCsv;
}

int run_gen(const GenOptions& o) {
  kmed::Dataset data;
  std::vector<double> trueCenters;
  if (o.kind == "grid" || o.kind == "grid2") {
    kmed::GridGaussianSpec spec;
    spec.gridSide = o.gridSide;
    spec.pointsPerCluster = o.pointsPerCluster;
    spec.sigma = o.sigma;
    spec.rngSeed = o.seed;
    kmed::GridData g =
        o.kind == "grid" ? kmed::gen_grid_gaussian(spec) : kmed::gen_grid_two_blob(spec);
    data = std::move(g.data);
    trueCenters = std::move(g.trueCenters);
  } else {
    kmed::SyntheticSpec spec;
    if (o.kind == "syn1") spec.kind = kmed::SyntheticSpec::Kind::Syn1;
    else if (o.kind == "syn2") spec.kind = kmed::SyntheticSpec::Kind::Syn2;
    else if (o.kind == "syn3") spec.kind = kmed::SyntheticSpec::Kind::Syn3;
    else if (o.kind == "syn4") spec.kind = kmed::SyntheticSpec::Kind::Syn4;
    else {
      std::cerr << "unknown dataset kind: " << o.kind << "\n";
      return 1;
    }
    spec.rngSeed = o.seed;
    spec.numCenters = o.numCenters;
    spec.samplesPerCenter = o.samplesPerCenter;
    spec.numSamples = o.numSamples;
    data = kmed::gen_synthetic(spec);
  }
  const kmed::DataFormat fmt =
      o.format.empty() ? default_format(o.kind) : kmed::format_from_name(o.format);
  kmed::save_dataset(data, o.out, fmt);
  if (!o.centersOut.empty()) {
    if (trueCenters.empty()) {
      std::cerr << "--centers-out is only available for grid kinds\n";
      return 1;
    }
    kmed::DenseData cd;
    cd.dim = 2;
    cd.values = trueCenters;
    kmed::save_dataset(kmed::Dataset(std::move(cd)), o.centersOut, kmed::DataFormat::DenseCsv);
  }
  std::cout << "wrote " << data.size() << " samples to " << o.out << "\n";
  return 0;
}

struct ClusterOptions {
  std::string in;
  std::string format = "dense-csv";
  std::string metric = "l2";
  std::string potential = "quadratic";
  std::size_t k = 2;
  std::string method = "clarans";
  int level = 2;
  std::uint64_t seed = 0;
  std::uint64_t rejections = 0;
  std::uint64_t maxSwaps = 0;
  double seconds = 0.0;
  std::string out;
};

int run_cluster(const ClusterOptions& o) {
  const kmed::Dataset data = kmed::load_dataset(o.in, kmed::format_from_name(o.format));
  const kmed::MetricSpace metric(kmed::metric_from_name(o.metric));
  const kmed::Potential psi(kmed::potential_from_name(o.potential));

  std::vector<std::uint32_t> centers;
  double energy = 0.0;
  if (o.method == "clarans") {
    kmed::EngineConfig ec;
    ec.level = o.level;
    ec.rngSeed = o.seed;
    if (o.maxSwaps > 0) ec.stop = kmed::StopCriterion::swaps(o.maxSwaps);
    else if (o.seconds > 0.0) ec.stop = kmed::StopCriterion::timeLimit(o.seconds);
    else ec.stop = kmed::StopCriterion::rejections(o.rejections);
    const kmed::ClaransResult r = kmed::run_clarans(data, metric, psi, o.k, ec);
    centers = r.state.centers;
    energy = r.report.energyTrajectory.back();
    std::cout << "swaps accepted: " << r.report.swapsAccepted
              << ", proposals: " << r.report.proposalsEvaluated
              << ", distance calcs: " << metric.counter().total() << "\n";
  } else if (o.method == "medlloyd") {
    kmed::MedlloydConfig mc;
    mc.rngSeed = o.seed;
    const auto [st, rep] = kmed::run_medlloyd(data, metric, psi, o.k, mc);
    centers = st.centers;
    energy = rep.energyTrajectory.back();
    std::cout << "iterations: " << rep.iterations << "\n";
  } else if (o.method == "pam") {
    kmed::Rng rng(kmed::substream_seed(o.seed, 0));
    const auto init = kmed::seed_uni(data, o.k, rng);
    const auto [st, rep] = kmed::run_pam(data, metric, psi, init);
    centers = st.centers;
    energy = rep.energyTrajectory.back();
    std::cout << "sweeps: " << rep.sweeps << ", swaps: " << rep.swapsImplemented << "\n";
  } else if (o.method == "uni" || o.method == "kmpp") {
    kmed::Rng rng(kmed::substream_seed(o.seed, 0));
    centers = o.method == "uni" ? kmed::seed_uni(data, o.k, rng)
                                : kmed::seed_kmpp(data, o.k, metric, rng);
    energy = kmed::total_energy(centers, data, metric, psi);
  } else {
    std::cerr << "unknown method: " << o.method << "\n";
    return 1;
  }

  std::cout << "energy: " << energy << "\n";
  if (!o.out.empty()) {
    std::ofstream f(o.out);
    for (const auto c : centers) f << c << "\n";
  }
  return 0;
}

struct BenchOptions {
  std::string in;
  std::string format = "dense-csv";
  std::size_t k = 2;
  std::vector<std::string> methods;
  double timeLimit = 0.0;
  double tlMultiple = 80.0;
  std::uint64_t repeatsCap = 0;
  std::uint64_t fixedRepeats = 0;
  std::uint64_t seed = 0;
  int level = 2;
  std::size_t threads = default_threads();
  std::vector<double> itok;
  std::vector<std::string> emit = {"json"};
  std::string out = "bench";
};

int run_bench(const BenchOptions& o) {
  const kmed::Dataset data = kmed::load_dataset(o.in, kmed::format_from_name(o.format));
  kmed::BenchSpec spec;
  spec.numClusters = o.k;
  spec.methods = o.methods;
  spec.timeLimitSeconds = o.timeLimit;
  spec.timeLimitMultiple = o.tlMultiple;
  spec.repeatsCap = o.repeatsCap;
  spec.fixedRepeats = o.fixedRepeats;
  spec.rngSeed = o.seed;
  spec.claransLevel = o.level;
  spec.numThreads = o.threads;
  spec.itok = o.itok;
  const kmed::BenchReport report = kmed::run_benchmark(data, spec);
  for (const auto& name : o.emit) {
    const kmed::ReportFormat fmt = kmed::report_format_from_name(name);
    std::string ext = fmt == kmed::ReportFormat::StructuredJson ? ".json"
                      : fmt == kmed::ReportFormat::CsvTable     ? ".csv"
                                                                : ".txt";
    kmed::emit_report(report, fmt, o.out + ext);
    std::cout << "wrote " << o.out + ext << "\n";
  }
  for (const auto& m : report.methods) {
    std::cout << m.method << ": runs=" << m.runs;
    if (m.hasInitMse) std::cout << " mean_init=" << m.meanInitMse;
    if (m.runs > 0) std::cout << " min_final=" << m.minFinalMse;
    std::cout << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"K-medoids clustering and seeding toolkit"};
  app.require_subcommand(1);
  app.set_config("--config");

  GenOptions g;
  CLI::App* gen = app.add_subcommand("gen", "generate a synthetic dataset");
  gen->add_option("--kind", g.kind, "grid | grid2 | syn1 | syn2 | syn3 | syn4");
  gen->add_option("--grid-side", g.gridSide);
  gen->add_option("--points-per-cluster", g.pointsPerCluster);
  gen->add_option("--sigma", g.sigma);
  gen->add_option("--centers", g.numCenters);
  gen->add_option("--samples-per-center", g.samplesPerCenter);
  gen->add_option("--num-samples", g.numSamples);
  gen->add_option("--seed", g.seed);
  gen->add_option("--out", g.out)->required();
  gen->add_option("--format", g.format, "dense-csv | sparse-svm | lines-of-text");
  gen->add_option("--centers-out", g.centersOut, "write true centers (grid kinds)");

  ClusterOptions c;
  CLI::App* cluster = app.add_subcommand("cluster", "run one clustering");
  cluster->add_option("--in", c.in)->required();
  cluster->add_option("--format", c.format);
  cluster->add_option("--metric", c.metric, "l2 | l1 | linf | levenshtein | normalized-levenshtein");
  cluster->add_option("--potential", c.potential,
                      "quadratic | identity | exponential | logarithmic | step");
  cluster->add_option("-k,--k", c.k)->required();
  cluster->add_option("--method", c.method, "clarans | medlloyd | pam | uni | kmpp");
  cluster->add_option("--level", c.level)->check(CLI::Range(-2, 3));
  cluster->add_option("--seed", c.seed);
  cluster->add_option("--rejections", c.rejections, "stop after this many consecutive rejections");
  cluster->add_option("--max-swaps", c.maxSwaps);
  cluster->add_option("--seconds", c.seconds, "time-limit stop");
  cluster->add_option("--out", c.out, "write center indices");

  BenchOptions b;
  CLI::App* bench = app.add_subcommand("bench", "time-limited multi-run comparison");
  bench->add_option("--in", b.in)->required();
  bench->add_option("--format", b.format);
  bench->add_option("-k,--k", b.k)->required();
  bench->add_option("--methods", b.methods, "uni kmpp bf medlloyd clarans kmpp-then-clarans")
      ->required();
  bench->add_option("--time-limit", b.timeLimit, "seconds per method");
  bench->add_option("--tl-multiple", b.tlMultiple, "time limit as a multiple of one kmpp+lloyd run");
  bench->add_option("--repeats-cap", b.repeatsCap);
  bench->add_option("--fixed-repeats", b.fixedRepeats, "exact run count, ignore the clock");
  bench->add_option("--seed", b.seed);
  bench->add_option("--level", b.level)->check(CLI::Range(-2, 3));
  bench->add_option("--threads", b.threads, "default from KMED_THREADS");
  bench->add_option("--itok", b.itok, "clarans time-budget multiples");
  bench->add_option("--emit", b.emit, "json | csv | plot");
  bench->add_option("--out", b.out, "output path prefix");

  CLI11_PARSE(app, argc, argv);
  try {
    if (gen->parsed()) return run_gen(g);
    if (cluster->parsed()) return run_cluster(c);
    if (bench->parsed()) return run_bench(b);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
