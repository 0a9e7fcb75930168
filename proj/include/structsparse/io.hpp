#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "structsparse/baselines.hpp"
#include "structsparse/structomp.hpp"
#include "structsparse/types.hpp"

namespace structsparse {

/// Shortest round-trip decimal form (std::to_chars); locale-independent, so
/// repeated runs produce byte-identical files.
std::string format_double(double v);

void write_matrix_csv(std::ostream& os, const Matrix& m);
void write_vector_csv(std::ostream& os, const Vector& v);
Matrix read_matrix_csv(std::istream& is);
Vector read_vector_csv(std::istream& is);

void save_matrix_csv(const std::string& path, const Matrix& m);
void save_vector_csv(const std::string& path, const Vector& v);
Matrix load_matrix_csv(const std::string& path);
Vector load_vector_csv(const std::string& path);

/// Plain-text (P2) 8-bit PGM; values are affinely mapped onto 0..255, so
/// this format is for inspection while CSV stays the exact carrier.
void write_pgm(std::ostream& os, const Matrix& image);
Matrix read_pgm(std::istream& is);
void save_pgm(const std::string& path, const Matrix& image);

/// Greedy run trace: one row per iteration
/// (k, block_id, gain_ratio, residual_norm, complexity).
void write_trace_csv(std::ostream& os, const GreedyPath& path);

/// Solver path export (lambda_or_step, nnz, residual_norm, error_vs_truth);
/// the error column is left empty without a truth vector.
void write_path_csv(std::ostream& os, const std::vector<PathPoint>& path,
                    const Vector* truth = nullptr);

}  // namespace structsparse
