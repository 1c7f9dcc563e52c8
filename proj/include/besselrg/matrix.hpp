#pragma once

#include <cstddef>
#include <vector>

namespace besselrg {

// Dense square matrix, row-major.
struct Matrix {
  std::size_t n = 0;
  std::vector<double> data;

  Matrix() = default;
  explicit Matrix(std::size_t size) : n(size), data(size * size, 0.0) {}

  double& operator()(std::size_t i, std::size_t j) { return data[i * n + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * n + j]; }
  bool operator==(const Matrix&) const = default;
};

}  // namespace besselrg
