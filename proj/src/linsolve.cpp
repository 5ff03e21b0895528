#include "plg/linsolve.hpp"

#include <cassert>
#include <stdexcept>

namespace plg {

SquareSolution solve_square(Matrix a, std::vector<Scalar> b) {
  const int n = a.rows;
  if (a.cols != n || static_cast<int>(b.size()) != n)
    throw std::invalid_argument("solve_square: non-square system");
  int sign = 1;
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (sgn(a(r, col)) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return {};
    if (piv != col) {
      for (int c = col; c < n; ++c) std::swap(a(piv, c), a(col, c));
      std::swap(b[piv], b[col]);
      sign = -sign;
    }
    if (sgn(a(col, col)) < 0) sign = -sign;
    for (int r = col + 1; r < n; ++r) {
      if (sgn(a(r, col)) == 0) continue;
      Scalar f = a(r, col) / a(col, col);
      for (int c = col + 1; c < n; ++c) a(r, c) -= f * a(col, c);
      b[r] -= f * b[col];
      a(r, col) = 0;
    }
  }
  std::vector<Scalar> x(n);
  for (int r = n - 1; r >= 0; --r) {
    Scalar s = b[r];
    for (int c = r + 1; c < n; ++c) s -= a(r, c) * x[c];
    x[r] = s / a(r, r);
  }
  return {sign, std::move(x)};
}

int det_sign(Matrix a) {
  const auto n = static_cast<std::size_t>(a.rows);
  return solve_square(std::move(a), std::vector<Scalar>(n)).det_sign;
}

AffineSolution solve_affine(const Matrix& a_in, const std::vector<Scalar>& b_in) {
  Matrix a = a_in;
  std::vector<Scalar> b = b_in;
  const int m = a.rows, n = a.cols;
  std::vector<int> pivot_col;
  int row = 0;
  for (int col = 0; col < n && row < m; ++col) {
    int piv = -1;
    for (int r = row; r < m; ++r)
      if (sgn(a(r, col)) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    if (piv != row) {
      for (int c = col; c < n; ++c) std::swap(a(piv, c), a(row, c));
      std::swap(b[piv], b[row]);
    }
    Scalar p = a(row, col);
    for (int c = col; c < n; ++c) a(row, c) /= p;
    b[row] /= p;
    for (int r = 0; r < m; ++r) {
      if (r == row || sgn(a(r, col)) == 0) continue;
      Scalar f = a(r, col);
      for (int c = col; c < n; ++c) a(r, c) -= f * a(row, c);
      b[r] -= f * b[row];
    }
    pivot_col.push_back(col);
    ++row;
  }
  AffineSolution s;
  for (int r = row; r < m; ++r)
    if (sgn(b[r]) != 0) return s;
  s.consistent = true;
  s.x0.assign(static_cast<std::size_t>(n), Scalar(0));
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (int r = 0; r < row; ++r) {
    s.x0[pivot_col[r]] = b[r];
    is_pivot[pivot_col[r]] = true;
  }
  for (int f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Scalar> z(static_cast<std::size_t>(n));
    z[f] = 1;
    for (int r = 0; r < row; ++r) z[pivot_col[r]] = -a(r, f);
    s.null_basis.push_back(std::move(z));
  }
  return s;
}

std::optional<std::vector<Scalar>> find_feasible_point(const Matrix& eq, const std::vector<Scalar>& eq_rhs,
                                                       const Matrix& le, const std::vector<Scalar>& le_rhs) {
  const int n = eq.rows > 0 ? eq.cols : le.cols;
  const int m_eq = eq.rows, m_le = le.rows;
  const int m = m_eq + m_le;
  // columns: n structural, m_le slacks, m artificials, then rhs
  const int n_slack = m_le;
  const int n_art = m;
  const int width = n + n_slack + n_art + 1;
  const int rhs = width - 1;
  Matrix t(m + 1, width);  // last row = phase-one objective
  for (int r = 0; r < m; ++r) {
    const bool is_eq = r < m_eq;
    const int src = is_eq ? r : r - m_eq;
    for (int c = 0; c < n; ++c) t(r, c) = is_eq ? eq(src, c) : le(src, c);
    if (!is_eq) t(r, n + src) = 1;
    t(r, rhs) = is_eq ? eq_rhs[src] : le_rhs[src];
    if (sgn(t(r, rhs)) < 0)
      for (int c = 0; c < n + n_slack; ++c) t(r, c) = -t(r, c);
    if (sgn(t(r, rhs)) < 0) t(r, rhs) = -t(r, rhs);
    t(r, n + n_slack + r) = 1;
  }
  std::vector<int> basis(m);
  for (int r = 0; r < m; ++r) basis[r] = n + n_slack + r;
  // objective row holds reduced costs of "minimize sum of artificials"
  for (int c = 0; c < n + n_slack; ++c) {
    Scalar s = 0;
    for (int r = 0; r < m; ++r) s -= t(r, c);
    t(m, c) = s;
  }
  {
    Scalar s = 0;
    for (int r = 0; r < m; ++r) s -= t(r, rhs);
    t(m, rhs) = s;
  }

  // Bland's rule terminates without cycling
  for (;;) {
    int enter = -1;
    for (int c = 0; c < n + n_slack; ++c)
      if (sgn(t(m, c)) < 0) {
        enter = c;
        break;
      }
    if (enter < 0) break;
    int leave = -1;
    Scalar best;
    for (int r = 0; r < m; ++r) {
      if (sgn(t(r, enter)) <= 0) continue;
      Scalar ratio = t(r, rhs) / t(r, enter);
      if (leave < 0 || ratio < best || (ratio == best && basis[r] < basis[leave])) {
        leave = r;
        best = ratio;
      }
    }
    if (leave < 0) break;  // unbounded direction; cannot happen for phase one
    Scalar p = t(leave, enter);
    for (int c = 0; c < width; ++c) t(leave, c) /= p;
    for (int r = 0; r <= m; ++r) {
      if (r == leave || sgn(t(r, enter)) == 0) continue;
      Scalar f = t(r, enter);
      for (int c = 0; c < width; ++c) t(r, c) -= f * t(leave, c);
    }
    basis[leave] = enter;
  }
  if (sgn(t(m, rhs)) != 0) return std::nullopt;
  std::vector<Scalar> u(n);
  for (int r = 0; r < m; ++r)
    if (basis[r] < n) u[basis[r]] = t(r, rhs);
  return u;
}

}  // namespace plg
