#pragma once

#include <filesystem>
#include <iosfwd>

#include "cpst/decompose.hpp"
#include "cpst/mask.hpp"
#include "cpst/tensor4.hpp"

namespace cpst {

/// Tensor text format:
///   n=<n>
///   order=4
///   field=complex
/// followed by n^4 lines "re im" in canonical entry order, printed with 17
/// significant digits so that a write/read round trip is exact.
void write_tensor(std::ostream& os, const Tensor4& t);
Tensor4 read_tensor(std::istream& is);

/// Mask text format: "n=<n>" then one one-based "i j k l" line per entry.
/// Reading rejects sets that are not PS-closed unless `close` is set, in
/// which case the closure is returned.
void write_mask(std::ostream& os, const SampleMask& mask);
SampleMask read_mask(std::istream& is, bool close = false);

/// Decomposition text format: "n=", "count=", "conjugated_second=" headers,
/// then per factor a "lambda=<v>" line and n^2 row-major "re im" lines.
void write_decomposition(std::ostream& os, const MatrixDecomposition& d);
MatrixDecomposition read_decomposition(std::istream& is);

void save_tensor(const std::filesystem::path& path, const Tensor4& t);
Tensor4 load_tensor(const std::filesystem::path& path);
void save_mask(const std::filesystem::path& path, const SampleMask& mask);
SampleMask load_mask(const std::filesystem::path& path, bool close = false);
void save_decomposition(const std::filesystem::path& path, const MatrixDecomposition& d);
MatrixDecomposition load_decomposition(const std::filesystem::path& path);

}  // namespace cpst
