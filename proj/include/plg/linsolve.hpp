#pragma once

// Exact dense linear algebra over the rationals: square solves with the sign
// of the determinant, and phase-one simplex feasibility for small polytopes.

#include "plg/exactgeom.hpp"

#include <optional>
#include <vector>

namespace plg {

struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<Scalar> data;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c) {}
  Scalar& operator()(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
  const Scalar& operator()(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }
};

struct SquareSolution {
  int det_sign = 0;          // 0 when singular
  std::vector<Scalar> x;     // empty when singular
};

/// Gaussian elimination on A x = b. A must be square.
SquareSolution solve_square(Matrix a, std::vector<Scalar> b);

/// Sign of det(A); A square.
int det_sign(Matrix a);

struct AffineSolution {
  bool consistent = false;
  std::vector<Scalar> x0;                     // free variables set to zero
  std::vector<std::vector<Scalar>> null_basis;  // one vector per free variable
};

/// General solution of A x = b by reduced row echelon form.
AffineSolution solve_affine(const Matrix& a, const std::vector<Scalar>& b);

/// Feasibility of { u >= 0 : eq * u = eq_rhs, le * u <= le_rhs }.
/// Either matrix may have zero rows. Returns a feasible point or nullopt.
std::optional<std::vector<Scalar>> find_feasible_point(const Matrix& eq, const std::vector<Scalar>& eq_rhs,
                                                       const Matrix& le, const std::vector<Scalar>& le_rhs);

}  // namespace plg
