#include "structsparse/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace structsparse {

std::string format_double(double v) {
  char buf[32];
  const auto result = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, result.ptr);
}

void write_matrix_csv(std::ostream& os, const Matrix& m) {
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) {
      if (c > 0) os << ',';
      os << format_double(m(r, c));
    }
    os << '\n';
  }
}

void write_vector_csv(std::ostream& os, const Vector& v) {
  for (Index i = 0; i < v.size(); ++i) os << format_double(v[i]) << '\n';
}

Matrix read_matrix_csv(std::istream& is) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    if (!rows.empty() && row.size() != rows.front().size())
      throw std::runtime_error("read_matrix_csv: ragged rows");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) return Matrix(0, 0);
  Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c)
      m(r, c) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
  return m;
}

Vector read_vector_csv(std::istream& is) {
  const Matrix m = read_matrix_csv(is);
  if (m.size() == 0) return Vector(0);
  if (m.cols() != 1) throw std::runtime_error("read_vector_csv: expected one column");
  return m.col(0);
}

namespace {
std::ofstream open_out(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  return os;
}
std::ifstream open_in(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open for reading: " + path);
  return is;
}
}  // namespace

void save_matrix_csv(const std::string& path, const Matrix& m) {
  auto os = open_out(path);
  write_matrix_csv(os, m);
}

void save_vector_csv(const std::string& path, const Vector& v) {
  auto os = open_out(path);
  write_vector_csv(os, v);
}

Matrix load_matrix_csv(const std::string& path) {
  auto is = open_in(path);
  return read_matrix_csv(is);
}

Vector load_vector_csv(const std::string& path) {
  auto is = open_in(path);
  return read_vector_csv(is);
}

void write_pgm(std::ostream& os, const Matrix& image) {
  const double lo = image.minCoeff();
  const double hi = image.maxCoeff();
  const double span = hi > lo ? hi - lo : 1.0;
  os << "P2\n" << image.cols() << ' ' << image.rows() << "\n255\n";
  for (Index r = 0; r < image.rows(); ++r) {
    for (Index c = 0; c < image.cols(); ++c) {
      const int gray = static_cast<int>(std::lround((image(r, c) - lo) / span * 255.0));
      os << std::clamp(gray, 0, 255);
      os << (c + 1 < image.cols() ? ' ' : '\n');
    }
  }
}

Matrix read_pgm(std::istream& is) {
  std::string magic;
  is >> magic;
  if (magic != "P2") throw std::runtime_error("read_pgm: expected plain P2");
  Index w = 0;
  Index h = 0;
  int maxval = 0;
  is >> w >> h >> maxval;
  if (w < 1 || h < 1 || maxval < 1) throw std::runtime_error("read_pgm: bad header");
  Matrix image(h, w);
  for (Index r = 0; r < h; ++r)
    for (Index c = 0; c < w; ++c) {
      int v;
      if (!(is >> v)) throw std::runtime_error("read_pgm: truncated data");
      image(r, c) = static_cast<double>(v) / static_cast<double>(maxval);
    }
  return image;
}

void save_pgm(const std::string& path, const Matrix& image) {
  auto os = open_out(path);
  write_pgm(os, image);
}

void write_trace_csv(std::ostream& os, const GreedyPath& path) {
  os << "# schema: structsparse.trace.v1\n";
  os << "k,block_id,gain_ratio,residual_norm,complexity\n";
  for (const GreedyState& s : path.states) {
    os << s.iteration << ',' << s.block_id << ',' << format_double(s.gain_ratio)
       << ',' << format_double(s.residual_norm) << ','
       << format_double(s.complexity) << '\n';
  }
}

void write_path_csv(std::ostream& os, const std::vector<PathPoint>& path,
                    const Vector* truth) {
  os << "# schema: structsparse.path.v1\n";
  os << "lambda_or_step,nnz,residual_norm,error_vs_truth\n";
  for (const PathPoint& pt : path) {
    os << format_double(pt.lambda) << ',' << support_of(pt.coefficients).size()
       << ',' << format_double(pt.residual_norm) << ',';
    if (truth != nullptr && truth->norm() > 0.0)
      os << format_double((pt.coefficients - *truth).norm() / truth->norm());
    os << '\n';
  }
}

}  // namespace structsparse
