#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "jeek/dataset.hpp"

namespace jeek {

// Shared on-disk formats: dense CSV (row-major, optional header) and the
// JSON container {"p": int, "K": int, "matrices": [[[...]]]}. All numeric
// output uses shortest round-trip decimals.

Matrix read_matrix_csv(const std::filesystem::path& path);
void write_matrix_csv(const Matrix& m, const std::filesystem::path& path);

struct MatrixBundle {
  int p = 0;                    // number of columns of every matrix
  std::vector<Matrix> matrices; // size K
};

MatrixBundle read_matrix_json(const std::filesystem::path& path);
void write_matrix_json(const MatrixBundle& bundle, const std::filesystem::path& path);

// Reads either format by extension (.csv -> single-matrix bundle).
MatrixBundle read_matrices(const std::filesystem::path& path);

// Shortest decimal that round-trips to the same double.
std::string format_double(double value);

}  // namespace jeek
