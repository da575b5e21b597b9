#include "ballmap/lp.hpp"

#include <stdexcept>

namespace ballmap {

namespace {

struct Tableau {
  int m = 0, ncols = 0;
  std::vector<RVec> T;  // m rows, ncols + 1 entries, last is rhs
  std::vector<int> basis;

  void pivot(int r, int c) {
    Rational p = T[r][c];
    for (auto& v : T[r]) v /= p;
    for (int i = 0; i < m; ++i) {
      if (i == r || sgn(T[i][c]) == 0) continue;
      Rational f = T[i][c];
      for (int j = 0; j <= ncols; ++j)
        if (sgn(T[r][j]) != 0) T[i][j] -= f * T[r][j];
    }
    basis[r] = c;
  }

  // Returns false when unbounded.
  bool run(const RVec& cost, const std::vector<bool>& allowed) {
    for (int iter = 0; iter < 100000; ++iter) {
      int enter = -1;
      for (int j = 0; j < ncols && enter < 0; ++j) {
        if (!allowed[j]) continue;
        bool basic = false;
        for (int b : basis) basic = basic || b == j;
        if (basic) continue;
        Rational rc = cost[j];
        for (int i = 0; i < m; ++i)
          if (sgn(T[i][j]) != 0) rc -= cost[basis[i]] * T[i][j];
        if (sgn(rc) > 0) enter = j;
      }
      if (enter < 0) return true;
      int leave = -1;
      Rational best;
      for (int i = 0; i < m; ++i) {
        if (sgn(T[i][enter]) <= 0) continue;
        Rational ratio = T[i][ncols] / T[i][enter];
        if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
    throw std::runtime_error("simplex iteration limit");
  }
};

}  // namespace

LPResult lp_maximize(const std::vector<RVec>& A, const RVec& b, const RVec& c) {
  int m = static_cast<int>(A.size());
  int n = static_cast<int>(c.size());
  if (static_cast<int>(b.size()) != m) throw std::invalid_argument("lp: size mismatch");
  // columns: x+ (n), x- (n), slack (m), artificial (m)
  Tableau tb;
  tb.m = m;
  tb.ncols = 2 * n + 2 * m;
  tb.T.assign(m, RVec(tb.ncols + 1, Rational(0)));
  tb.basis.assign(m, 0);
  for (int i = 0; i < m; ++i) {
    if (static_cast<int>(A[i].size()) != n) throw std::invalid_argument("lp: ragged matrix");
    int s = sgn(b[i]) < 0 ? -1 : 1;
    for (int j = 0; j < n; ++j) {
      tb.T[i][j] = A[i][j] * s;
      tb.T[i][n + j] = -A[i][j] * s;
    }
    tb.T[i][2 * n + i] = s;
    tb.T[i][2 * n + m + i] = 1;
    tb.T[i][tb.ncols] = b[i] * s;
    tb.basis[i] = 2 * n + m + i;
  }
  RVec cost1(tb.ncols, Rational(0));
  for (int i = 0; i < m; ++i) cost1[2 * n + m + i] = -1;
  std::vector<bool> all(tb.ncols, true);
  tb.run(cost1, all);
  Rational infeas = 0;
  for (int i = 0; i < m; ++i)
    if (tb.basis[i] >= 2 * n + m) infeas += tb.T[i][tb.ncols];
  LPResult res;
  if (sgn(infeas) > 0) return res;
  // drive artificials out of the basis
  for (int i = 0; i < m; ++i) {
    if (tb.basis[i] < 2 * n + m) continue;
    for (int j = 0; j < 2 * n + m; ++j)
      if (sgn(tb.T[i][j]) != 0) {
        tb.pivot(i, j);
        break;
      }
  }
  std::vector<bool> allowed(tb.ncols, true);
  for (int i = 0; i < m; ++i) allowed[2 * n + m + i] = false;
  RVec cost2(tb.ncols, Rational(0));
  for (int j = 0; j < n; ++j) {
    cost2[j] = c[j];
    cost2[n + j] = -c[j];
  }
  if (!tb.run(cost2, allowed)) {
    res.status = LPResult::Unbounded;
    return res;
  }
  RVec z(tb.ncols, Rational(0));
  for (int i = 0; i < m; ++i) z[tb.basis[i]] = tb.T[i][tb.ncols];
  res.status = LPResult::Optimal;
  res.x.assign(n, Rational(0));
  res.value = 0;
  for (int j = 0; j < n; ++j) {
    res.x[j] = z[j] - z[n + j];
    res.value += c[j] * res.x[j];
  }
  return res;
}

namespace {

// Row echelon in place; returns pivot columns.
std::vector<int> echelon(std::vector<RVec>& M, int ncols) {
  std::vector<int> piv;
  int r = 0;
  for (int c = 0; c < ncols && r < static_cast<int>(M.size()); ++c) {
    int p = -1;
    for (int i = r; i < static_cast<int>(M.size()); ++i)
      if (sgn(M[i][c]) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(M[r], M[p]);
    Rational d = M[r][c];
    for (auto& v : M[r]) v /= d;
    for (int i = 0; i < static_cast<int>(M.size()); ++i) {
      if (i == r || sgn(M[i][c]) == 0) continue;
      Rational f = M[i][c];
      for (size_t j = 0; j < M[i].size(); ++j) M[i][j] -= f * M[r][j];
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

}  // namespace

int rank_of(std::vector<RVec> M) {
  if (M.empty()) return 0;
  return static_cast<int>(echelon(M, static_cast<int>(M[0].size())).size());
}

RVec solve_square(std::vector<RVec> M, RVec r) {
  int n = static_cast<int>(M.size());
  for (int i = 0; i < n; ++i) M[i].push_back(r[i]);
  auto piv = echelon(M, n);
  if (static_cast<int>(piv.size()) < n) return {};
  RVec x(n);
  for (int i = 0; i < n; ++i) x[i] = M[i][n];
  return x;
}

std::vector<RVec> nullspace(std::vector<RVec> M, int ncols) {
  auto piv = echelon(M, ncols);
  std::vector<bool> is_piv(ncols, false);
  for (int c : piv) is_piv[c] = true;
  std::vector<RVec> basis;
  for (int f = 0; f < ncols; ++f) {
    if (is_piv[f]) continue;
    RVec v(ncols, Rational(0));
    v[f] = 1;
    for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -M[r][f];
    basis.push_back(v);
  }
  return basis;
}

}  // namespace ballmap
