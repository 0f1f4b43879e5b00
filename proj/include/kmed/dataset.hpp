#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace kmed {

// Dense points, row-major.
struct DenseData {
  std::size_t dim = 0;
  std::vector<double> values;  // size() == n * dim

  std::size_t size() const { return dim == 0 ? 0 : values.size() / dim; }
  const double* row(std::size_t i) const { return values.data() + i * dim; }
};

// One sparse vector: strictly increasing indices.
struct SparseVec {
  std::vector<std::uint32_t> idx;
  std::vector<double> val;
};

struct SparseData {
  std::vector<SparseVec> rows;
  std::size_t size() const { return rows.size(); }
};

// Symbol sequences, one string per sample.
struct SeqData {
  std::vector<std::string> rows;
  std::size_t size() const { return rows.size(); }
};

enum class DataKind { Dense, Sparse, Sequence };

class Dataset {
 public:
  Dataset() = default;
  explicit Dataset(DenseData d) : storage_(std::move(d)) { validate(); }
  explicit Dataset(SparseData s) : storage_(std::move(s)) { validate(); }
  explicit Dataset(SeqData q) : storage_(std::move(q)) { validate(); }

  std::size_t size() const {
    return std::visit([](const auto& s) { return s.size(); }, storage_);
  }

  DataKind kind() const {
    if (std::holds_alternative<DenseData>(storage_)) return DataKind::Dense;
    if (std::holds_alternative<SparseData>(storage_)) return DataKind::Sparse;
    return DataKind::Sequence;
  }

  const DenseData& dense() const { return std::get<DenseData>(storage_); }
  const SparseData& sparse() const { return std::get<SparseData>(storage_); }
  const SeqData& seq() const { return std::get<SeqData>(storage_); }

 private:
  void validate() const {
    if (size() == 0) throw std::invalid_argument("dataset must contain at least one sample");
    if (const auto* s = std::get_if<SparseData>(&storage_)) {
      for (const auto& r : s->rows) {
        if (r.idx.size() != r.val.size())
          throw std::invalid_argument("sparse sample: index/value size mismatch");
        for (std::size_t j = 1; j < r.idx.size(); ++j)
          if (r.idx[j] <= r.idx[j - 1])
            throw std::invalid_argument("sparse sample: indices must be strictly increasing");
      }
    }
    if (const auto* d = std::get_if<DenseData>(&storage_)) {
      if (d->dim == 0 || d->values.size() % d->dim != 0)
        throw std::invalid_argument("dense data: values not a multiple of dim");
    }
  }

  std::variant<DenseData, SparseData, SeqData> storage_;
};

}  // namespace kmed
