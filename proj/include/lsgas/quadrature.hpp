#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

namespace lsgas {

struct QuadratureResult {
  double value = 0.0;
  double abs_error = 0.0;  // summed Kronrod error estimates
  std::size_t evaluations = 0;
  bool converged = false;
};

namespace detail {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1].
inline constexpr std::array<double, 15> kKronrodNodes = {
    -0.991455371120812639206854697526329, -0.949107912342758524526189684047851,
    -0.864864423359769072789712788640926, -0.741531185599394439863864773280788,
    -0.586087235467691130294144838258730, -0.405845151377397166906606412076961,
    -0.207784955007898467600689403773245, 0.0,
    0.207784955007898467600689403773245,  0.405845151377397166906606412076961,
    0.586087235467691130294144838258730,  0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,  0.949107912342758524526189684047851,
    0.991455371120812639206854697526329};

inline constexpr std::array<double, 15> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
    0.204432940075298892414161999234649, 0.190350578064785409913256402421014,
    0.169004726639267902826583426598550, 0.140653259715525918745189590510238,
    0.104790010322250183839876322541518, 0.063092092629978553290700663189204,
    0.022935322010529224963732008058970};

// Gauss-7 weights aligned with the odd Kronrod node indices 1,3,...,13.
inline constexpr std::array<double, 7> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
    0.381830050505118944950369775488975, 0.279705391489276667901467771423780,
    0.129484966168869693270611432679082};

template <class F>
void gauss_kronrod(F&& f, double a, double b, double& value, double& error) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double kronrod = 0.0, gauss = 0.0;
  for (std::size_t i = 0; i < 15; ++i) {
    const double fx = f(mid + half * kKronrodNodes[i]);
    kronrod += kKronrodWeights[i] * fx;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * fx;
  }
  value = kronrod * half;
  const double diff = std::abs(kronrod - gauss) * std::abs(half);
  // Standard QUADPACK-style error sharpening.
  error = diff * std::min(1.0, std::pow(200.0 * diff / (std::abs(value) + 1e-300), 1.5));
  if (!(error > 0.0)) error = diff;
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod integration of f over [a, b]: repeatedly
/// bisects the interval with the largest error estimate until the summed
/// estimate meets max(abs_tol, rel_tol * |integral|) or the budget runs out.
template <class F>
QuadratureResult integrate_adaptive(F&& f, double a, double b, double abs_tol,
                                    double rel_tol,
                                    std::size_t max_intervals = 4000) {
  struct Piece {
    double a, b, value, error;
    bool operator<(const Piece& o) const { return error < o.error; }
  };

  QuadratureResult result;
  std::vector<Piece> pieces;
  pieces.reserve(256);
  auto evaluate = [&](double lo, double hi) {
    Piece p{lo, hi, 0.0, 0.0};
    detail::gauss_kronrod(f, lo, hi, p.value, p.error);
    result.evaluations += 15;
    return p;
  };
  auto totals = [&] {
    double v = 0.0, e = 0.0;
    for (const auto& p : pieces) {
      v += p.value;
      e += p.error;
    }
    return std::pair{v, e};
  };

  pieces.push_back(evaluate(a, b));
  std::make_heap(pieces.begin(), pieces.end());

  while (pieces.size() < max_intervals) {
    const auto [total, total_error] = totals();
    if (total_error <= std::max(abs_tol, rel_tol * std::abs(total))) break;
    std::pop_heap(pieces.begin(), pieces.end());
    const Piece worst = pieces.back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {  // interval exhausted
      std::push_heap(pieces.begin(), pieces.end());
      break;
    }
    pieces.pop_back();
    pieces.push_back(evaluate(worst.a, mid));
    std::push_heap(pieces.begin(), pieces.end());
    pieces.push_back(evaluate(mid, worst.b));
    std::push_heap(pieces.begin(), pieces.end());
  }

  const auto [total, total_error] = totals();
  result.value = total;
  result.abs_error = total_error;
  result.converged =
      total_error <= std::max(abs_tol, rel_tol * std::abs(total));
  return result;
}

}  // namespace lsgas
