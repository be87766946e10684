#pragma once

#include <vector>

#include "anm/game.hpp"
#include "anm/problem.hpp"
#include "anm/simplex.hpp"

namespace anm {

/// The fractional-modification program over the M spend variables. The
/// altruism variables are eliminated up front: each agent row's coefficient
/// on spend k is sign_k times the altruism value one unit of action k feeds
/// into that agent's binding inequality.
struct LpTableau {
  int num_vars = 0;
  std::vector<double> objective;           // action costs
  std::vector<std::vector<double>> rows;   // one row per agent
  std::vector<Sense> senses;               // Ge for investors, Le for the rest
  std::vector<double> rhs;                 // theta minus the initial-network term
};

inline LpTableau build_lp(const AnmProblem& p) {
  if (p.mode() != Mode::Fractional) throw ModeError("build_lp requires fractional mode");
  const BnpgInstance& inst = p.inst();
  const int n = inst.n();
  const int m = p.num_actions();
  const TargetDerivation d = derive_targets(inst, p.target());

  LpTableau lp;
  lp.num_vars = m;
  lp.objective.resize(m);
  for (int k = 0; k < m; ++k) lp.objective[k] = p.menu()[k].cost;
  lp.rows.assign(n, std::vector<double>(m, 0.0));
  lp.senses.resize(n);
  lp.rhs.resize(n);

  // delta[i][j]: the marginal benefit of neighbor j in agent i's inequality.
  auto delta_for = [&](int i, int j) {
    return p.target().invests(i) ? *d.delta_minus[j] : *d.delta_plus[j];
  };

  for (int i = 0; i < n; ++i) {
    lp.senses[i] = p.target().invests(i) ? Sense::Ge : Sense::Le;
    KahanSum base;
    for (int j : inst.graph().neighbors(i)) base.add(p.alt_in().alpha(i, j) * delta_for(i, j));
    lp.rhs[i] = d.theta[i] - base.value();
  }
  for (int k = 0; k < m; ++k) {
    const int sign = p.menu()[k].sign;
    for (auto [i, j, w] : p.action_entries(k)) {
      if (!inst.graph().has_edge(i, j)) continue;  // inert pair
      lp.rows[i][k] += sign * w * delta_for(i, j);
    }
  }
  return lp;
}

struct LpSolution {
  bool feasible = false;
  std::vector<double> spend;
  double cost = 0.0;
  std::vector<int> infeasible_agents;  // agents whose rows could not be met
};

inline LpSolution solve_lp(const LpTableau& lp, double tol = kLpTol) {
  LinearProgram prog;
  prog.num_vars = lp.num_vars;
  prog.objective = lp.objective;
  prog.rows = lp.rows;
  prog.senses = lp.senses;
  prog.rhs = lp.rhs;

  const SimplexResult r = SimplexSolver(tol).solve(prog);
  LpSolution out;
  switch (r.status) {
    case SimplexResult::Optimal:
      out.feasible = true;
      out.spend = r.x;
      out.cost = r.objective;
      return out;
    case SimplexResult::Infeasible:
      out.infeasible_agents = r.infeasible_rows;
      return out;
    case SimplexResult::Unbounded:
      throw NumericalFailure("LP unbounded: action costs should prevent this");
    case SimplexResult::IterationLimit:
      throw NumericalFailure("LP iteration cap exceeded");
  }
  return out;
}

/// Solves the fractional problem end to end: builds the spend-space program,
/// solves it, reconstructs the modified network, and re-verifies the target
/// before claiming optimality.
inline Solution solve_fractional(const AnmProblem& p, double tol = kDefaultTol) {
  const LpTableau lp = build_lp(p);
  const LpSolution r = solve_lp(lp);
  if (!r.feasible) return Solution::infeasible();
  AltruismNetwork alt_out = p.apply_fractional(r.spend);
  if (!is_psne_ineq(p.inst(), alt_out, p.target(), tol))
    throw NumericalFailure("LP solution failed equilibrium verification");
  return Solution::optimal(r.spend, r.cost, std::move(alt_out));
}

}  // namespace anm
