#include "kmed/dataio.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace kmed {

namespace {

[[noreturn]] void fail(const std::string& path, std::size_t line, const std::string& msg) {
  throw std::runtime_error(path + ":" + std::to_string(line) + ": " + msg);
}

double parse_double(const std::string& path, std::size_t line, const std::string& tok) {
  try {
    std::size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used != tok.size()) fail(path, line, "trailing characters in number '" + tok + "'");
    return v;
  } catch (const std::invalid_argument&) {
    fail(path, line, "not a number: '" + tok + "'");
  } catch (const std::out_of_range&) {
    fail(path, line, "number out of range: '" + tok + "'");
  }
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

Dataset load_dense_csv(std::istream& in, const std::string& path) {
  DenseData d;
  std::string line;
  std::size_t lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    if (line.empty()) continue;
    std::stringstream row(line);
    std::string tok;
    std::size_t cols = 0;
    while (std::getline(row, tok, ',')) {
      d.values.push_back(parse_double(path, lineNo, tok));
      ++cols;
    }
    if (cols == 0) fail(path, lineNo, "empty row");
    if (d.dim == 0)
      d.dim = cols;
    else if (cols != d.dim)
      fail(path, lineNo, "row has " + std::to_string(cols) + " columns, expected " +
                             std::to_string(d.dim));
  }
  if (d.values.empty()) throw std::runtime_error(path + ": empty dataset");
  return Dataset(std::move(d));
}

Dataset load_sparse_svm(std::istream& in, const std::string& path) {
  SparseData sp;
  std::string line;
  std::size_t lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    if (line.empty()) continue;
    std::stringstream row(line);
    std::string tok;
    SparseVec v;
    bool first = true;
    while (row >> tok) {
      const auto colon = tok.find(':');
      if (colon == std::string::npos) {
        if (first) {
          first = false;  // leading label, ignored
          continue;
        }
        fail(path, lineNo, "expected index:value, got '" + tok + "'");
      }
      first = false;
      const std::string idxStr = tok.substr(0, colon);
      std::uint32_t idx = 0;
      const auto [p, ec] =
          std::from_chars(idxStr.data(), idxStr.data() + idxStr.size(), idx);
      if (ec != std::errc{} || p != idxStr.data() + idxStr.size())
        fail(path, lineNo, "bad index: '" + idxStr + "'");
      if (!v.idx.empty() && idx <= v.idx.back())
        fail(path, lineNo, "indices must be strictly increasing");
      v.idx.push_back(idx);
      v.val.push_back(parse_double(path, lineNo, tok.substr(colon + 1)));
    }
    sp.rows.push_back(std::move(v));
  }
  if (sp.rows.empty()) throw std::runtime_error(path + ": empty dataset");
  return Dataset(std::move(sp));
}

Dataset load_lines(std::istream& in, const std::string& path) {
  SeqData q;
  std::string line;
  while (std::getline(in, line)) q.rows.push_back(line);
  if (q.rows.empty()) throw std::runtime_error(path + ": empty dataset");
  return Dataset(std::move(q));
}

}  // namespace

DataFormat format_from_name(const std::string& name) {
  if (name == "dense-csv") return DataFormat::DenseCsv;
  if (name == "sparse-svm") return DataFormat::SparseSvm;
  if (name == "lines-of-text") return DataFormat::LinesOfText;
  throw std::invalid_argument("unknown data format: " + name);
}

std::string format_name(DataFormat fmt) {
  switch (fmt) {
    case DataFormat::DenseCsv: return "dense-csv";
    case DataFormat::SparseSvm: return "sparse-svm";
    case DataFormat::LinesOfText: return "lines-of-text";
  }
  return "?";
}

Dataset load_dataset(const std::string& path, DataFormat fmt) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  switch (fmt) {
    case DataFormat::DenseCsv: return load_dense_csv(in, path);
    case DataFormat::SparseSvm: return load_sparse_svm(in, path);
    case DataFormat::LinesOfText: return load_lines(in, path);
  }
  throw std::invalid_argument("load_dataset: unknown format");
}

void save_dataset(const Dataset& data, const std::string& path, DataFormat fmt) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  switch (fmt) {
    case DataFormat::DenseCsv: {
      const DenseData& d = data.dense();
      for (std::size_t i = 0; i < d.size(); ++i) {
        for (std::size_t t = 0; t < d.dim; ++t) {
          if (t) out << ',';
          out << format_double(d.row(i)[t]);
        }
        out << '\n';
      }
      break;
    }
    case DataFormat::SparseSvm: {
      for (const auto& r : data.sparse().rows) {
        out << 0;  // placeholder label
        for (std::size_t j = 0; j < r.idx.size(); ++j)
          out << ' ' << r.idx[j] << ':' << format_double(r.val[j]);
        out << '\n';
      }
      break;
    }
    case DataFormat::LinesOfText: {
      for (const auto& s : data.seq().rows) out << s << '\n';
      break;
    }
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace kmed
