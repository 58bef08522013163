#pragma once

#include <string>
#include <type_traits>
#include <vector>

#include "regret_route/error.hpp"

namespace regret_route {

template <typename Scalar>
Scalar simplex_tolerance() {
  if constexpr (std::is_floating_point_v<Scalar>) {
    return Scalar(1e-11);
  } else {
    return Scalar(0);
  }
}

enum class SimplexStatus { kOptimal, kUnbounded };

template <typename Scalar>
struct SimplexResult {
  SimplexStatus status = SimplexStatus::kOptimal;
  Scalar objective{};
  std::vector<Scalar> primal;     // y
  std::vector<Scalar> row_duals;  // shadow price of each row, >= 0
  int pivots = 0;
};

// Dense tableau simplex for   max c.y  s.t.  A y <= b,  y >= 0   with b >= 0,
// started from the all-slack basis. Bland's rule on both the entering and the
// leaving choice, so degenerate pivots cannot cycle.
//
// Works with any ordered field: double for the column-generation master,
// exact rationals for the enumeration oracle.
template <typename Scalar>
SimplexResult<Scalar> solve_packing_lp(const std::vector<std::vector<Scalar>>& a, const std::vector<Scalar>& b,
                                       const std::vector<Scalar>& c) {
  using detail::check;
  const int rows = static_cast<int>(a.size());
  const int vars = static_cast<int>(c.size());
  const int width = vars + rows;
  const Scalar eps = simplex_tolerance<Scalar>();
  check(static_cast<int>(b.size()) == rows, ErrorKind::kInvalidArgument, "rhs size mismatch");

  std::vector<std::vector<Scalar>> t(rows, std::vector<Scalar>(width, Scalar(0)));
  std::vector<Scalar> rhs(rows);
  std::vector<int> basic(rows);
  for (int r = 0; r < rows; ++r) {
    check(static_cast<int>(a[r].size()) == vars, ErrorKind::kInvalidArgument, "row width mismatch");
    check(!(b[r] < Scalar(0)), ErrorKind::kInvalidArgument, "packing LP needs b >= 0");
    for (int j = 0; j < vars; ++j) t[r][j] = a[r][j];
    t[r][vars + r] = Scalar(1);
    rhs[r] = b[r];
    basic[r] = vars + r;
  }
  std::vector<Scalar> z(width, Scalar(0));
  for (int j = 0; j < vars; ++j) z[j] = -c[j];
  Scalar z_rhs(0);

  SimplexResult<Scalar> out;
  const int pivot_cap = 50 * (rows + vars) + 1000;
  for (;;) {
    int enter = -1;
    for (int j = 0; j < width; ++j)
      if (z[j] < -eps) {
        enter = j;
        break;
      }
    if (enter < 0) break;
    int leave = -1;
    Scalar best_ratio{};
    for (int r = 0; r < rows; ++r) {
      if (!(t[r][enter] > eps)) continue;
      Scalar ratio = rhs[r] / t[r][enter];
      if (leave < 0 || ratio < best_ratio || (!(best_ratio < ratio) && basic[r] < basic[leave])) {
        leave = r;
        best_ratio = ratio;
      }
    }
    if (leave < 0) {
      out.status = SimplexStatus::kUnbounded;
      return out;
    }
    check(++out.pivots <= pivot_cap, ErrorKind::kNumerical,
          "simplex exceeded " + std::to_string(pivot_cap) + " pivots on a " + std::to_string(rows) + "x" +
              std::to_string(vars) + " program");

    const Scalar piv = t[leave][enter];
    for (int j = 0; j < width; ++j) t[leave][j] /= piv;
    rhs[leave] /= piv;
    for (int r = 0; r < rows; ++r) {
      if (r == leave) continue;
      const Scalar f = t[r][enter];
      if (f == Scalar(0)) continue;
      for (int j = 0; j < width; ++j) t[r][j] -= f * t[leave][j];
      rhs[r] -= f * rhs[leave];
      if constexpr (std::is_floating_point_v<Scalar>) {
        if (rhs[r] < Scalar(0) && rhs[r] > -eps) rhs[r] = Scalar(0);
      }
    }
    const Scalar f = z[enter];
    for (int j = 0; j < width; ++j) z[j] -= f * t[leave][j];
    z_rhs -= f * rhs[leave];
    basic[leave] = enter;
  }

  out.objective = z_rhs;
  out.primal.assign(vars, Scalar(0));
  for (int r = 0; r < rows; ++r)
    if (basic[r] < vars) out.primal[basic[r]] = rhs[r];
  out.row_duals.resize(rows);
  for (int r = 0; r < rows; ++r) out.row_duals[r] = z[vars + r];
  return out;
}

}  // namespace regret_route
