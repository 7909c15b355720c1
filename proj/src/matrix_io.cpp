#include "idemsum/matrix_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "idemsum/error.hpp"

namespace idemsum {

namespace {

void append_double(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
  out += buf;
}

}  // namespace

std::string format_matrix(const CMat& m) {
  std::string out = std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out += ' ';
      append_double(out, m(i, j).real());
      out += ' ';
      append_double(out, m(i, j).imag());
    }
    out += '\n';
  }
  return out;
}

void write_matrix(std::ostream& os, const CMat& m) { os << format_matrix(m); }

CMat read_matrix(std::istream& is) {
  long long rows = 0, cols = 0;
  if (!(is >> rows >> cols) || rows < 0 || cols < 0) {
    throw Error(Errc::Parse, "matrix header must be 'rows cols'");
  }
  CMat m(rows, cols);
  for (long long i = 0; i < rows; ++i) {
    for (long long j = 0; j < cols; ++j) {
      double re = 0, im = 0;
      if (!(is >> re >> im)) {
        throw Error(Errc::Parse, "truncated matrix body at row " + std::to_string(i));
      }
      if (!std::isfinite(re) || !std::isfinite(im)) {
        throw Error(Errc::Parse, "non-finite matrix entry");
      }
      m(i, j) = cplx(re, im);
    }
  }
  return m;
}

void save_matrix(const std::filesystem::path& path, const CMat& m) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(Errc::Parse, "cannot open " + path.string() + " for writing");
  write_matrix(f, m);
}

CMat load_matrix(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(Errc::Parse, "cannot open " + path.string());
  return read_matrix(f);
}

}  // namespace idemsum
