#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace deepconn {

template <typename Scalar>
struct LpSolution {
  Scalar objective{};
  std::vector<Scalar> primal;  // one entry per column
  std::vector<Scalar> dual;    // one entry per row
};

// Dense primal simplex for
//
//   max c·x  s.t.  A x <= b,  x >= 0,   with b >= 0,
//
// starting from the all-slack basis. Pivots follow Bland's rule (lowest
// eligible index enters, ties in the ratio test leave by lowest basic
// index), so degenerate problems terminate. Exact scalar types give exact
// optima; row duals are read from the final objective row.
//
// Returns nullopt when the objective is unbounded.
template <typename Scalar>
std::optional<LpSolution<Scalar>> solve_packing_lp(
    const std::vector<std::vector<Scalar>>& a,  // rows × cols
    const std::vector<Scalar>& b, const std::vector<Scalar>& c) {
  const std::size_t rows = b.size();
  const std::size_t cols = c.size();
  const std::size_t width = cols + rows;  // structural then slack columns

  std::vector<std::vector<Scalar>> tab(rows, std::vector<Scalar>(width + 1, Scalar(0)));
  std::vector<std::size_t> basis(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) tab[i][j] = a[i][j];
    tab[i][cols + i] = Scalar(1);
    tab[i][width] = b[i];
    basis[i] = cols + i;
  }
  // reduced[j] = c_j - c_B B^{-1} A_j; reduced[width] = -objective.
  std::vector<Scalar> reduced(width + 1, Scalar(0));
  for (std::size_t j = 0; j < cols; ++j) reduced[j] = c[j];

  for (;;) {
    std::size_t enter = width;
    for (std::size_t j = 0; j < width; ++j) {
      if (reduced[j] > 0) {
        enter = j;
        break;
      }
    }
    if (enter == width) break;

    std::size_t leave = rows;
    Scalar best_ratio{};
    for (std::size_t i = 0; i < rows; ++i) {
      if (!(tab[i][enter] > 0)) continue;
      Scalar ratio = tab[i][width] / tab[i][enter];
      if (leave == rows || ratio < best_ratio ||
          (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave == rows) return std::nullopt;

    const Scalar pivot = tab[leave][enter];
    for (auto& v : tab[leave]) v /= pivot;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == leave || tab[i][enter] == 0) continue;
      const Scalar factor = tab[i][enter];
      for (std::size_t j = 0; j <= width; ++j) tab[i][j] -= factor * tab[leave][j];
    }
    if (reduced[enter] != 0) {
      const Scalar factor = reduced[enter];
      for (std::size_t j = 0; j <= width; ++j) reduced[j] -= factor * tab[leave][j];
    }
    basis[leave] = enter;
  }

  LpSolution<Scalar> sol;
  sol.objective = -reduced[width];
  sol.primal.assign(cols, Scalar(0));
  for (std::size_t i = 0; i < rows; ++i) {
    if (basis[i] < cols) sol.primal[basis[i]] = tab[i][width];
  }
  sol.dual.resize(rows);
  for (std::size_t i = 0; i < rows; ++i) sol.dual[i] = -reduced[cols + i];
  return sol;
}

}  // namespace deepconn
