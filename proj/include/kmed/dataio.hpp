#pragma once

#include <string>

#include "kmed/dataset.hpp"

namespace kmed {

enum class DataFormat { DenseCsv, SparseSvm, LinesOfText };

DataFormat format_from_name(const std::string& name);
std::string format_name(DataFormat fmt);

// dense-csv: one comma-separated row of reals per line.
// sparse-svm: optional leading label (ignored on load), then "index:value"
//             pairs; indices strictly increasing.
// lines-of-text: one symbol sequence per line.
// Malformed input raises std::runtime_error with the 1-based line number.
Dataset load_dataset(const std::string& path, DataFormat fmt);

// Inverse of load_dataset: save + load reproduces the dataset exactly.
void save_dataset(const Dataset& data, const std::string& path, DataFormat fmt);

}  // namespace kmed
