#pragma once

#include <vector>

#include "anm/common.hpp"

namespace anm {

enum class Sense { Le, Ge };

/// min c'x subject to rows[i] . x (sense[i]) rhs[i], x >= 0.
struct LinearProgram {
  int num_vars = 0;
  std::vector<double> objective;
  std::vector<std::vector<double>> rows;
  std::vector<Sense> senses;
  std::vector<double> rhs;
};

struct SimplexResult {
  enum Status { Optimal, Infeasible, Unbounded, IterationLimit } status = Optimal;
  std::vector<double> x;
  double objective = 0.0;
  std::vector<int> infeasible_rows;  // phase-1 certificate: rows left uncovered
};

/// Dense two-phase simplex with Bland's pivoting rule. Deterministic; the
/// iteration cap (50 * (vars + rows) by default) only trips on numerical
/// breakdown since Bland's rule excludes cycling.
class SimplexSolver {
 public:
  explicit SimplexSolver(double tol = kLpTol, int cap_factor = 50) : tol_(tol), cap_factor_(cap_factor) {}

  SimplexResult solve(const LinearProgram& lp) const {
    const int n = lp.num_vars;
    const int m = static_cast<int>(lp.rows.size());

    // Column layout: [structural | slack/surplus | artificial | rhs].
    std::vector<int> art_col(m, -1);
    int num_art = 0;
    std::vector<double> rhs(lp.rhs);
    std::vector<std::vector<double>> rows(lp.rows);
    std::vector<Sense> senses(lp.senses);
    for (int r = 0; r < m; ++r) {
      if (rhs[r] < 0.0) {
        for (double& v : rows[r]) v = -v;
        rhs[r] = -rhs[r];
        senses[r] = senses[r] == Sense::Le ? Sense::Ge : Sense::Le;
      }
      if (senses[r] == Sense::Ge) art_col[r] = num_art++;
    }

    const int slack_base = n;
    const int art_base = n + m;
    const int width = n + m + num_art;
    std::vector<std::vector<double>> tab(m, std::vector<double>(width + 1, 0.0));
    std::vector<int> basis(m, -1);
    for (int r = 0; r < m; ++r) {
      for (int j = 0; j < n; ++j) tab[r][j] = rows[r][j];
      tab[r][width] = rhs[r];
      if (senses[r] == Sense::Le) {
        tab[r][slack_base + r] = 1.0;
        basis[r] = slack_base + r;
      } else {
        tab[r][slack_base + r] = -1.0;  // surplus
        tab[r][art_base + art_col[r]] = 1.0;
        basis[r] = art_base + art_col[r];
      }
    }

    int iterations_left = cap_factor_ * (n + m + 1);

    auto pivot = [&](int r, int c) {
      const double p = tab[r][c];
      for (int j = 0; j <= width; ++j) tab[r][j] /= p;
      for (int rr = 0; rr < m; ++rr) {
        if (rr == r) continue;
        const double f = tab[rr][c];
        if (f == 0.0) continue;
        for (int j = 0; j <= width; ++j) tab[rr][j] -= f * tab[r][j];
        tab[rr][c] = 0.0;
      }
      basis[r] = c;
    };

    // Runs Bland's-rule iterations on the current tableau for the given
    // objective (reduced-cost) row; returns false on iteration exhaustion.
    auto run = [&](std::vector<double>& obj, int max_col) -> SimplexResult::Status {
      while (true) {
        int enter = -1;
        for (int j = 0; j < max_col; ++j) {
          if (obj[j] < -tol_) {
            enter = j;
            break;
          }
        }
        if (enter < 0) return SimplexResult::Optimal;
        if (--iterations_left < 0) return SimplexResult::IterationLimit;

        int leave = -1;
        double best_ratio = 0.0;
        for (int r = 0; r < m; ++r) {
          if (tab[r][enter] > tol_) {
            const double ratio = tab[r][width] / tab[r][enter];
            if (leave < 0 || ratio < best_ratio - 1e-12 ||
                (ratio < best_ratio + 1e-12 && basis[r] < basis[leave])) {
              leave = r;
              best_ratio = ratio;
            }
          }
        }
        if (leave < 0) return SimplexResult::Unbounded;

        const double f = obj[enter];
        pivot(leave, enter);
        for (int j = 0; j <= width; ++j) obj[j] -= f * tab[leave][j];
        obj[enter] = 0.0;
      }
    };

    SimplexResult out;

    if (num_art > 0) {
      // Phase 1: minimize the artificial total.
      std::vector<double> obj(width + 1, 0.0);
      for (int j = art_base; j < width; ++j) obj[j] = 1.0;
      for (int r = 0; r < m; ++r)
        if (basis[r] >= art_base)
          for (int j = 0; j <= width; ++j) obj[j] -= tab[r][j];

      auto status = run(obj, width);
      if (status != SimplexResult::Optimal) {
        out.status = status;
        return out;
      }
      const double phase1 = -obj[width];
      if (phase1 > tol_ * 10) {
        out.status = SimplexResult::Infeasible;
        for (int r = 0; r < m; ++r)
          if (basis[r] >= art_base && tab[r][width] > tol_) out.infeasible_rows.push_back(r);
        return out;
      }
      // Drive remaining zero-level artificials out of the basis.
      for (int r = 0; r < m; ++r) {
        if (basis[r] < art_base) continue;
        int c = -1;
        for (int j = 0; j < art_base; ++j)
          if (std::abs(tab[r][j]) > tol_) {
            c = j;
            break;
          }
        if (c >= 0) pivot(r, c);
      }
      // Rows whose basis is still artificial are redundant; blank them.
      for (int r = 0; r < m; ++r)
        if (basis[r] >= art_base) {
          for (int j = 0; j <= width; ++j) tab[r][j] = 0.0;
          tab[r][basis[r]] = 1.0;
        }
    } else {
      // All-slack start is already feasible.
      for (int r = 0; r < m; ++r)
        if (tab[r][width] < -tol_) {
          out.status = SimplexResult::Infeasible;
          out.infeasible_rows.push_back(r);
          return out;
        }
    }

    // Phase 2 on the true objective; artificial columns stay ineligible.
    std::vector<double> obj(width + 1, 0.0);
    for (int j = 0; j < n; ++j) obj[j] = lp.objective[j];
    for (int r = 0; r < m; ++r) {
      if (basis[r] < n && lp.objective[basis[r]] != 0.0) {
        const double f = lp.objective[basis[r]];
        for (int j = 0; j <= width; ++j) obj[j] -= f * tab[r][j];
      }
    }
    auto status = run(obj, art_base);
    if (status != SimplexResult::Optimal) {
      out.status = status;
      return out;
    }

    out.x.assign(n, 0.0);
    for (int r = 0; r < m; ++r)
      if (basis[r] < n) out.x[basis[r]] = tab[r][width];
    KahanSum z;
    for (int j = 0; j < n; ++j) z.add(out.x[j] * lp.objective[j]);
    out.objective = z.value();
    return out;
  }

 private:
  double tol_;
  int cap_factor_;
};

}  // namespace anm
