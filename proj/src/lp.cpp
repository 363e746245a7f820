#include "tropmono/lp.hpp"

namespace tropmono::lp {

namespace {

struct Tableau {
  int m = 0, cols = 0;  // cols excludes rhs
  std::vector<std::vector<Q>> a;  // m rows, cols + 1 entries (last = rhs)
  std::vector<Q> z;               // reduced costs, cols + 1 (last = -objective value)
  std::vector<int> basis;

  void pivot(int r, int c) {
    Q inv = 1 / a[r][c];
    for (auto& e : a[r])
      if (sgn(e) != 0) e *= inv;
    auto elim = [&](std::vector<Q>& row) {
      if (sgn(row[c]) == 0) return;
      Q f = row[c];
      for (int j = 0; j <= cols; ++j)
        if (sgn(a[r][j]) != 0) row[j] -= f * a[r][j];
    };
    for (int i = 0; i < m; ++i)
      if (i != r) elim(a[i]);
    elim(z);
    basis[r] = c;
  }

  // returns false when unbounded
  bool run(const std::vector<char>& allowed) {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < cols; ++j)
        if (allowed[j] && sgn(z[j]) > 0) {
          enter = j;
          break;
        }
      if (enter < 0) return true;
      int leave = -1;
      Q best;
      for (int i = 0; i < m; ++i) {
        if (sgn(a[i][enter]) <= 0) continue;
        Q ratio = a[i][cols] / a[i][enter];
        if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }

  void set_objective(const std::vector<Q>& c) {
    z.assign(cols + 1, Q(0));
    for (int j = 0; j < cols; ++j) z[j] = c[j];
    for (int i = 0; i < m; ++i) {
      const Q& cb = c[basis[i]];
      if (sgn(cb) == 0) continue;
      for (int j = 0; j <= cols; ++j)
        if (sgn(a[i][j]) != 0) z[j] -= cb * a[i][j];
    }
  }
};

}  // namespace

Solution maximize(const Problem& p) {
  const int n = p.num_vars;
  const int m = static_cast<int>(p.rows.size());
  int n_slack = 0, n_art = 0;
  std::vector<Constraint> rows = p.rows;
  for (auto& r : rows) {
    if (sgn(r.rhs) < 0) {
      r.rhs = -r.rhs;
      for (auto& t : r.terms) t.second = -t.second;
      if (r.sense == Sense::LE)
        r.sense = Sense::GE;
      else if (r.sense == Sense::GE)
        r.sense = Sense::LE;
    }
    if (r.sense != Sense::EQ) ++n_slack;
    if (r.sense != Sense::LE) ++n_art;
  }
  Tableau T;
  T.m = m;
  T.cols = n + n_slack + n_art;
  T.a.assign(m, std::vector<Q>(T.cols + 1, Q(0)));
  T.basis.assign(m, -1);
  int s = n, art = n + n_slack;
  std::vector<char> is_art(T.cols, 0);
  for (int i = 0; i < m; ++i) {
    const auto& r = rows[i];
    for (auto& [j, c] : r.terms) T.a[i][j] += c;
    T.a[i][T.cols] = r.rhs;
    if (r.sense == Sense::LE) {
      T.a[i][s] = 1;
      T.basis[i] = s++;
    } else {
      if (r.sense == Sense::GE) T.a[i][s++] = -1;
      T.a[i][art] = 1;
      is_art[art] = 1;
      T.basis[i] = art++;
    }
  }

  Solution out;
  std::vector<char> allowed(T.cols, 1);
  if (n_art > 0) {
    std::vector<Q> c1(T.cols, Q(0));
    for (int j = 0; j < T.cols; ++j)
      if (is_art[j]) c1[j] = -1;
    T.set_objective(c1);
    T.run(allowed);
    if (sgn(T.z[T.cols]) != 0) {  // -(phase one optimum) != 0
      out.status = Status::Infeasible;
      return out;
    }
    // drive artificials out of the basis
    std::vector<char> keep(m, 1);
    for (int i = 0; i < m; ++i) {
      if (!is_art[T.basis[i]]) continue;
      int c = -1;
      for (int j = 0; j < T.cols; ++j)
        if (!is_art[j] && sgn(T.a[i][j]) != 0) {
          c = j;
          break;
        }
      if (c >= 0)
        T.pivot(i, c);
      else
        keep[i] = 0;
    }
    Tableau U;
    U.cols = T.cols;
    for (int i = 0; i < m; ++i)
      if (keep[i]) {
        U.a.push_back(std::move(T.a[i]));
        U.basis.push_back(T.basis[i]);
      }
    U.m = static_cast<int>(U.a.size());
    T = std::move(U);
    for (int j = 0; j < T.cols; ++j)
      if (is_art[j]) allowed[j] = 0;
  }
  std::vector<Q> c2(T.cols, Q(0));
  for (int j = 0; j < n && j < static_cast<int>(p.objective.size()); ++j) c2[j] = p.objective[j];
  T.set_objective(c2);
  if (!T.run(allowed)) {
    out.status = Status::Unbounded;
    return out;
  }
  out.status = Status::Optimal;
  out.x.assign(n, Q(0));
  for (int i = 0; i < T.m; ++i)
    if (T.basis[i] < n) out.x[T.basis[i]] = T.a[i][T.cols];
  out.value = -T.z[T.cols];
  return out;
}

}  // namespace tropmono::lp
