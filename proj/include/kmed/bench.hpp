#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kmed/clarans.hpp"
#include "kmed/dataset.hpp"

namespace kmed {

// Multi-run comparison protocol: each method is run repeatedly until a time
// limit elapses (no new run starts past the limit) or a repeat cap is hit.
struct BenchSpec {
  std::size_t numClusters = 2;
  std::vector<std::string> methods;  // uni | kmpp | bf | medlloyd | clarans | kmpp-then-clarans
  double timeLimitSeconds = 0.0;     // 0 -> derive from timeLimitMultiple
  double timeLimitMultiple = 80.0;   // limit = multiple * (one kmpp+lloyd run)
  std::uint64_t repeatsCap = 0;      // 0 -> unlimited within the time limit
  std::uint64_t fixedRepeats = 0;    // >0 -> exactly this many runs, no clock (reproducible)
  std::uint64_t rngSeed = 0;
  int claransLevel = 2;
  StopCriterion claransStop;  // default: K^2 consecutive rejections
  std::size_t bfPartitions = 10;
  std::size_t numThreads = 1;
  std::vector<double> itok;  // clarans time-budget multiples of one kmpp+lloyd run
};

struct RunRecord {
  bool hasInitMse = true;  // false for bf (mean-based init is not comparable)
  double initMse = 0.0;
  double finalMse = 0.0;
  double initSeconds = 0.0;
  double refineSeconds = 0.0;
  std::uint64_t swapEvaluations = 0;
  std::uint64_t swapImplementations = 0;
  std::vector<std::uint64_t> rejectionRuns;
  std::vector<double> energyTrajectory;
  std::uint64_t distanceCalcs = 0;
};

// Summary MSEs are normalized by the report's normalization constant; the
// per-run records keep raw values.
struct MethodReport {
  std::string method;
  std::uint64_t runs = 0;
  bool hasInitMse = true;
  double meanInitMse = 0.0;
  double minFinalMse = 0.0;
  double meanFinalMse = 0.0;
  double stdFinalMse = 0.0;
  std::vector<RunRecord> records;
};

struct BenchReport {
  std::size_t numClusters = 0;
  double normalization = 1.0;  // mean raw kmpp init MSE; 1 when kmpp is absent
  std::vector<MethodReport> methods;
};

bool operator==(const RunRecord& a, const RunRecord& b);
bool operator==(const MethodReport& a, const MethodReport& b);
bool operator==(const BenchReport& a, const BenchReport& b);

// Dense data only (the protocol scores by K-means MSE).
BenchReport run_benchmark(const Dataset& data, const BenchSpec& spec);

enum class ReportFormat { StructuredJson, CsvTable, PlotData };
ReportFormat report_format_from_name(const std::string& name);

void emit_report(const BenchReport& report, ReportFormat fmt, const std::string& path);
BenchReport load_report_json(const std::string& path);

}  // namespace kmed
