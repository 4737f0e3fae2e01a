#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

namespace qsplit {

using Amp = std::complex<double>;

inline constexpr double kConstructionTol = 1e-12;  // unitarity, orthonormality, hermiticity
inline constexpr double kAggregateTol = 1e-10;     // norms, probability sums, trace
inline constexpr double kNullBranchTol = 1e-14;    // branch weight below which the post state is null

// Dense complex square matrix, row-major. Dimensions here are tiny (2 or 4),
// so everything is written for clarity rather than speed.
struct Matrix {
  int dim = 0;
  std::vector<Amp> m;  // dim*dim entries

  Matrix() = default;
  Matrix(int d, std::vector<Amp> entries) : dim(d), m(std::move(entries)) {
    if (dim <= 0 || m.size() != static_cast<std::size_t>(dim) * dim)
      throw std::invalid_argument("matrix entries do not match dimension");
  }

  static Matrix zero(int d) { return Matrix(d, std::vector<Amp>(static_cast<std::size_t>(d) * d)); }
  static Matrix identity(int d) {
    Matrix out = zero(d);
    for (int i = 0; i < d; ++i) out.at(i, i) = 1.0;
    return out;
  }

  Amp& at(int r, int c) { return m[static_cast<std::size_t>(r) * dim + c]; }
  const Amp& at(int r, int c) const { return m[static_cast<std::size_t>(r) * dim + c]; }

  Matrix dagger() const {
    Matrix out = zero(dim);
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) out.at(c, r) = std::conj(at(r, c));
    return out;
  }

  Matrix operator*(const Matrix& rhs) const {
    if (dim != rhs.dim) throw std::invalid_argument("matrix product dimension mismatch");
    Matrix out = zero(dim);
    for (int r = 0; r < dim; ++r)
      for (int k = 0; k < dim; ++k)
        for (int c = 0; c < dim; ++c) out.at(r, c) += at(r, k) * rhs.at(k, c);
    return out;
  }

  // max |a_ij - b_ij|
  static double max_abs_diff(const Matrix& a, const Matrix& b) {
    if (a.dim != b.dim) throw std::invalid_argument("matrix comparison dimension mismatch");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.m.size(); ++i) worst = std::max(worst, std::abs(a.m[i] - b.m[i]));
    return worst;
  }
};

bool all_finite(const std::vector<Amp>& v);

}  // namespace qsplit
