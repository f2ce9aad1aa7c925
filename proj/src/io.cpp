#include "mscov/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace mscov::io {

std::string format_double(double x) {
  char buf[32];
  int len = std::snprintf(buf, sizeof(buf), "%.17g", x);
  return std::string(buf, static_cast<size_t>(len));
}

void write_text_atomic(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + tmp.string());
    out << text;
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string matrix_to_csv(const Matrix& a) {
  std::string out;
  out.reserve(static_cast<size_t>(a.size()) * 20);
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      if (j) out += ',';
      out += format_double(a(i, j));
    }
    out += '\n';
  }
  return out;
}

void write_matrix_csv(const std::filesystem::path& path, const Matrix& a) {
  write_text_atomic(path, matrix_to_csv(a));
}

namespace {

std::vector<std::vector<double>> read_csv_rows(const std::filesystem::path& path,
                                               bool skip_header) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (first && skip_header) {
      first = false;
      continue;
    }
    first = false;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw std::runtime_error("bad numeric cell '" + cell + "' in " +
                                 path.string());
      }
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::runtime_error("empty CSV: " + path.string());
  for (const auto& r : rows)
    if (r.size() != rows[0].size())
      throw std::runtime_error("ragged CSV: " + path.string());
  return rows;
}

}  // namespace

Matrix read_matrix_csv(const std::filesystem::path& path) {
  auto rows = read_csv_rows(path, false);
  Matrix a(static_cast<Index>(rows.size()), static_cast<Index>(rows[0].size()));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows[0].size(); ++j)
      a(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
  return a;
}

void write_mask_csv(const std::filesystem::path& path, const MaskMatrix& mask) {
  std::string out;
  for (Index i = 0; i < mask.rows(); ++i) {
    for (Index j = 0; j < mask.cols(); ++j) {
      if (j) out += ',';
      out += mask(i, j) ? '1' : '0';
    }
    out += '\n';
  }
  write_text_atomic(path, out);
}

MaskMatrix read_mask_csv(const std::filesystem::path& path) {
  Matrix a = read_matrix_csv(path);
  MaskMatrix mask(a.rows(), a.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) {
      double v = a(i, j);
      if (v != 0.0 && v != 1.0)
        throw std::runtime_error("mask entries must be 0 or 1 in " + path.string());
      mask(i, j) = static_cast<int>(v);
    }
  return mask;
}

void write_curve_csv(const std::filesystem::path& path, const DensityCurve& curve) {
  std::string out = "x,density,cdf\n";
  for (Index j = 0; j < curve.xs.size(); ++j) {
    out += format_double(curve.xs(j));
    out += ',';
    out += format_double(curve.density(j));
    out += ',';
    out += format_double(curve.cdf(j));
    out += '\n';
  }
  write_text_atomic(path, out);
}

DensityCurve read_curve_csv(const std::filesystem::path& path) {
  auto rows = read_csv_rows(path, true);
  if (rows[0].size() != 3)
    throw std::runtime_error("curve CSV needs 3 columns: " + path.string());
  DensityCurve c;
  const Index m = static_cast<Index>(rows.size());
  c.xs.resize(m);
  c.density.resize(m);
  c.cdf.resize(m);
  for (Index j = 0; j < m; ++j) {
    c.xs(j) = rows[static_cast<size_t>(j)][0];
    c.density(j) = rows[static_cast<size_t>(j)][1];
    c.cdf(j) = rows[static_cast<size_t>(j)][2];
  }
  return c;
}

void write_histogram_csv(const std::filesystem::path& path, const Histogram& h) {
  std::string out = "bin_lo,bin_hi,mass\n";
  for (Index b = 0; b < h.masses.size(); ++b) {
    out += format_double(h.edges(b));
    out += ',';
    out += format_double(h.edges(b + 1));
    out += ',';
    out += format_double(h.masses(b));
    out += '\n';
  }
  write_text_atomic(path, out);
}

}  // namespace mscov::io
