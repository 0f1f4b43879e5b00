#include "kmed/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace kmed {

MetricKind metric_from_name(const std::string& name) {
  if (name == "l2" || name == "euclidean") return MetricKind::Euclidean;
  if (name == "l1") return MetricKind::L1;
  if (name == "linf") return MetricKind::Linf;
  if (name == "levenshtein") return MetricKind::Levenshtein;
  if (name == "normalized-levenshtein" || name == "nlevenshtein")
    return MetricKind::NormalizedLevenshtein;
  throw std::invalid_argument("unknown metric: " + name);
}

std::string metric_name(MetricKind kind) {
  switch (kind) {
    case MetricKind::Euclidean: return "l2";
    case MetricKind::L1: return "l1";
    case MetricKind::Linf: return "linf";
    case MetricKind::Levenshtein: return "levenshtein";
    case MetricKind::NormalizedLevenshtein: return "normalized-levenshtein";
  }
  return "?";
}

double dense_distance(MetricKind kind, const double* a, const double* b, std::size_t dim) {
  double acc = 0.0;
  switch (kind) {
    case MetricKind::Euclidean:
      for (std::size_t d = 0; d < dim; ++d) {
        const double diff = a[d] - b[d];
        acc += diff * diff;
      }
      return std::sqrt(acc);
    case MetricKind::L1:
      for (std::size_t d = 0; d < dim; ++d) acc += std::abs(a[d] - b[d]);
      return acc;
    case MetricKind::Linf:
      for (std::size_t d = 0; d < dim; ++d) acc = std::max(acc, std::abs(a[d] - b[d]));
      return acc;
    default:
      throw std::invalid_argument("metric requires sequence data");
  }
}

double sparse_distance(MetricKind kind, const SparseVec& a, const SparseVec& b) {
  double acc = 0.0;
  std::size_t ia = 0, ib = 0;
  auto take = [&](double va, double vb) {
    const double diff = va - vb;
    switch (kind) {
      case MetricKind::Euclidean: acc += diff * diff; break;
      case MetricKind::L1: acc += std::abs(diff); break;
      case MetricKind::Linf: acc = std::max(acc, std::abs(diff)); break;
      default: throw std::invalid_argument("metric requires sequence data");
    }
  };
  while (ia < a.idx.size() && ib < b.idx.size()) {
    if (a.idx[ia] == b.idx[ib]) {
      take(a.val[ia], b.val[ib]);
      ++ia;
      ++ib;
    } else if (a.idx[ia] < b.idx[ib]) {
      take(a.val[ia], 0.0);
      ++ia;
    } else {
      take(0.0, b.val[ib]);
      ++ib;
    }
  }
  for (; ia < a.idx.size(); ++ia) take(a.val[ia], 0.0);
  for (; ib < b.idx.size(); ++ib) take(0.0, b.val[ib]);
  return kind == MetricKind::Euclidean ? std::sqrt(acc) : acc;
}

std::uint64_t levenshtein(const std::string& a, const std::string& b) {
  const std::size_t la = a.size(), lb = b.size();
  std::vector<std::uint64_t> row(lb + 1);
  for (std::size_t j = 0; j <= lb; ++j) row[j] = j;
  for (std::size_t i = 1; i <= la; ++i) {
    std::uint64_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= lb; ++j) {
      const std::uint64_t sub = diag + (a[i - 1] == b[j - 1] ? 0 : 1);
      diag = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, sub});
    }
  }
  return row[lb];
}

std::uint64_t levenshtein_banded(const std::string& a, const std::string& b,
                                 std::uint64_t limit, std::uint64_t* cellUpdates) {
  const std::size_t la = a.size(), lb = b.size();
  const std::uint64_t big = limit + 1;
  if (la > lb) return levenshtein_banded(b, a, limit, cellUpdates);
  if (lb - la > limit) return big;
  // Any alignment with <= limit edits stays within the band |i - j| <= limit.
  const std::size_t w = static_cast<std::size_t>(limit);
  std::vector<std::uint64_t> row(lb + 1, big), next(lb + 1, big);
  const std::size_t hi0 = std::min(lb, w);
  for (std::size_t j = 0; j <= hi0; ++j) row[j] = j;
  std::uint64_t cells = hi0 + 1;
  for (std::size_t i = 1; i <= la; ++i) {
    const std::size_t lo = (i > w) ? i - w : 0;
    const std::size_t hi = std::min(lb, i + w);
    std::uint64_t rowMin = big;
    for (std::size_t j = lo; j <= hi; ++j) {
      std::uint64_t best = big;
      if (j == 0) {
        best = std::min<std::uint64_t>(i, big);
      } else {
        const std::uint64_t sub = row[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
        best = std::min(best, sub);
        if (row[j] < big) best = std::min(best, row[j] + 1);
        if (j > lo && next[j - 1] < big) best = std::min(best, next[j - 1] + 1);
        best = std::min(best, big);
      }
      next[j] = best;
      rowMin = std::min(rowMin, best);
      ++cells;
    }
    if (lo > 0) next[lo - 1] = big;  // stale entry from row i-1's band
    if (rowMin >= big) {
      if (cellUpdates) *cellUpdates += cells;
      return big;
    }
    row.swap(next);
  }
  if (cellUpdates) *cellUpdates += cells;
  return std::min(row[lb], big);
}

namespace {

double nld_from_lev(double lev, double la, double lb) {
  if (lev == 0.0) return 0.0;
  return 2.0 * lev / (la + lb + lev);
}

// Largest integer L with every lev value <= L mapping to nld < threshold,
// i.e. the band limit needed so that Exact is returned whenever nld < t.
std::uint64_t lev_limit_for_nld(double t, std::size_t la, std::size_t lb) {
  if (t >= 2.0) return la + lb;  // nld < 2 always
  // nld(L) < t  <=>  L (2 - t) < t (la + lb)
  const double bound = t * static_cast<double>(la + lb) / (2.0 - t);
  std::uint64_t L = static_cast<std::uint64_t>(bound);
  while (L > 0 && nld_from_lev(static_cast<double>(L), la, lb) >= t) --L;
  return L;
}

}  // namespace

double MetricSpace::distance(const Dataset& data, std::size_t i, std::size_t j) const {
  double v = 0.0;
  switch (data.kind()) {
    case DataKind::Dense: {
      const auto& d = data.dense();
      v = dense_distance(kind_, d.row(i), d.row(j), d.dim);
      break;
    }
    case DataKind::Sparse:
      v = sparse_distance(kind_, data.sparse().rows[i], data.sparse().rows[j]);
      break;
    case DataKind::Sequence: {
      if (kind_ != MetricKind::Levenshtein && kind_ != MetricKind::NormalizedLevenshtein)
        throw std::invalid_argument("vector metric applied to sequence data");
      const auto& a = data.seq().rows[i];
      const auto& b = data.seq().rows[j];
      std::uint64_t cells = 0;
      const auto lev =
          levenshtein_banded(a, b, a.size() + b.size(), &cells);
      counter_.levCellUpdates += cells;
      v = static_cast<double>(lev);
      if (kind_ == MetricKind::NormalizedLevenshtein)
        v = nld_from_lev(v, static_cast<double>(a.size()), static_cast<double>(b.size()));
      break;
    }
  }
  counter_.fullEvaluations++;
  return v;
}

DistResult MetricSpace::distance_thresholded(const Dataset& data, std::size_t i, std::size_t j,
                                             double threshold) const {
  if (threshold < 0.0) throw std::invalid_argument("threshold must be non-negative");
  switch (data.kind()) {
    case DataKind::Dense: {
      const auto& dd = data.dense();
      const double* a = dd.row(i);
      const double* b = dd.row(j);
      double acc = 0.0;
      // Partial sums are lower bounds; abort once they prove v >= threshold.
      if (kind_ == MetricKind::Euclidean) {
        const double t2 = threshold * threshold;
        for (std::size_t d = 0; d < dd.dim; ++d) {
          const double diff = a[d] - b[d];
          acc += diff * diff;
          if (acc >= t2 && acc > 0.0) {
            counter_.abortedEvaluations++;
            return {threshold, false};
          }
        }
        counter_.fullEvaluations++;
        return {std::sqrt(acc), true};
      }
      if (kind_ == MetricKind::L1) {
        for (std::size_t d = 0; d < dd.dim; ++d) {
          acc += std::abs(a[d] - b[d]);
          if (acc >= threshold && acc > 0.0) {
            counter_.abortedEvaluations++;
            return {threshold, false};
          }
        }
        counter_.fullEvaluations++;
        return {acc, true};
      }
      if (kind_ == MetricKind::Linf) {
        for (std::size_t d = 0; d < dd.dim; ++d) {
          acc = std::max(acc, std::abs(a[d] - b[d]));
          if (acc >= threshold && acc > 0.0) {
            counter_.abortedEvaluations++;
            return {threshold, false};
          }
        }
        counter_.fullEvaluations++;
        return {acc, true};
      }
      throw std::invalid_argument("metric requires sequence data");
    }
    case DataKind::Sparse: {
      const double v = sparse_distance(kind_, data.sparse().rows[i], data.sparse().rows[j]);
      if (v >= threshold && v > 0.0) {
        counter_.abortedEvaluations++;
        return {threshold, false};
      }
      counter_.fullEvaluations++;
      return {v, true};
    }
    case DataKind::Sequence: {
      const auto& a = data.seq().rows[i];
      const auto& b = data.seq().rows[j];
      if (a == b) {
        counter_.fullEvaluations++;
        return {0.0, true};
      }
      std::uint64_t limit;
      if (kind_ == MetricKind::Levenshtein) {
        // v < threshold with integer v means v <= ceil(threshold) - 1.
        limit = threshold <= 0.0
                    ? 0
                    : static_cast<std::uint64_t>(std::ceil(threshold)) - 1;
      } else if (kind_ == MetricKind::NormalizedLevenshtein) {
        limit = lev_limit_for_nld(threshold, a.size(), b.size());
      } else {
        throw std::invalid_argument("vector metric applied to sequence data");
      }
      std::uint64_t cells = 0;
      const std::uint64_t lev = levenshtein_banded(a, b, limit, &cells);
      counter_.levCellUpdates += cells;
      if (lev > limit) {
        counter_.abortedEvaluations++;
        return {threshold, false};
      }
      counter_.fullEvaluations++;
      double v = static_cast<double>(lev);
      if (kind_ == MetricKind::NormalizedLevenshtein)
        v = nld_from_lev(v, static_cast<double>(a.size()), static_cast<double>(b.size()));
      return {v, true};
    }
  }
  return {0.0, true};
}

}  // namespace kmed
