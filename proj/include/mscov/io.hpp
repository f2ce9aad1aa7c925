#ifndef MSCOV_IO_HPP
#define MSCOV_IO_HPP

#include <filesystem>
#include <string>

#include "mscov/spectral.hpp"
#include "mscov/types.hpp"

namespace mscov::io {

/// Writes text to `path` atomically (temp file + rename).
void write_text_atomic(const std::filesystem::path& path, const std::string& text);

/// Matrix CSV: comma-separated, 17 significant digits, no header.
std::string matrix_to_csv(const Matrix& a);
void write_matrix_csv(const std::filesystem::path& path, const Matrix& a);
Matrix read_matrix_csv(const std::filesystem::path& path);

void write_mask_csv(const std::filesystem::path& path, const MaskMatrix& mask);
MaskMatrix read_mask_csv(const std::filesystem::path& path);

/// Curve CSV with header row "x,density,cdf".
void write_curve_csv(const std::filesystem::path& path, const DensityCurve& curve);
DensityCurve read_curve_csv(const std::filesystem::path& path);

/// Histogram CSV with header row "bin_lo,bin_hi,mass".
void write_histogram_csv(const std::filesystem::path& path, const Histogram& h);

std::string format_double(double x);

}  // namespace mscov::io

#endif  // MSCOV_IO_HPP
