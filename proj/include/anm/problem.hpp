#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "anm/game.hpp"

namespace anm {

/// One principal action: a set of altruism pairs it strengthens (+1) or
/// weakens (-1), at a per-unit cost. `weights`, when non-empty, gives each
/// pair its own per-unit effect (in-memory only; the JSON format always
/// means weight 1).
struct Action {
  std::vector<std::pair<int, int>> edges;
  int sign = +1;
  double cost = 0.0;
  std::vector<double> weights;
};

using ActionMenu = std::vector<Action>;

enum class Mode { Fractional, Binary };

/// A full modification problem: game, initial altruism network, target
/// profile, action menu, spend mode, and an optional budget for the decision
/// variant.
class AnmProblem {
 public:
  AnmProblem(BnpgInstance inst, AltruismNetwork alt_in, Profile target, ActionMenu menu, Mode mode,
             std::optional<double> budget = std::nullopt)
      : inst_(std::move(inst)),
        alt_in_(std::move(alt_in)),
        target_(std::move(target)),
        menu_(std::move(menu)),
        mode_(mode),
        budget_(budget) {
    const int n = inst_.n();
    if (alt_in_.n() != n) throw ValidationError("altruism network dimension does not match agent count");
    if (target_.n() != n) throw ValidationError("target profile length does not match agent count");
    if (static_cast<long long>(menu_.size()) > 4LL * n * n)
      throw ValidationError("action menu exceeds the 4*n^2 size bound");
    if (budget_ && (!std::isfinite(*budget_) || *budget_ < 0.0))
      throw ValidationError("budget must be finite and >= 0");

    const bool graph_mode = alt_in_.is_uniform();
    std::map<std::pair<int, int>, int> pair_owner;
    for (size_t k = 0; k < menu_.size(); ++k) {
      const Action& act = menu_[k];
      const std::string where = "action " + std::to_string(k);
      if (act.sign != 1 && act.sign != -1) throw ValidationError(where + ": sign must be +1 or -1");
      if (!std::isfinite(act.cost) || act.cost < 0.0) throw ValidationError(where + ": cost must be finite and >= 0");
      if (act.edges.empty()) throw ValidationError(where + ": edge set is empty");
      if (!act.weights.empty()) {
        if (act.weights.size() != act.edges.size())
          throw ValidationError(where + ": weights must match the edge set");
        for (double w : act.weights)
          if (!std::isfinite(w)) throw ValidationError(where + ": entry weight must be finite");
      }
      std::set<std::pair<int, int>> seen;
      for (auto [i, j] : act.edges) {
        if (i < 0 || i >= n || j < 0 || j >= n) throw ValidationError(where + ": pair index out of range");
        if (i == j) throw ValidationError(where + ": self pair");
        auto key = canonical_pair(i, j);
        if (!seen.insert(key).second) throw ValidationError(where + ": duplicate pair in edge set");
      }
      if (graph_mode) {
        if (act.edges.size() != 1) throw ValidationError(where + ": uniform-graph problems need singleton actions");
        auto [i, j] = act.edges[0];
        const bool existing = alt_in_.has_uniform_edge(i, j);
        if (existing != (act.sign == -1))
          throw ValidationError(where + ": sign must be -1 exactly for existing altruism edges");
        auto key = canonical_pair(i, j);
        auto [it, fresh] = pair_owner.insert({key, static_cast<int>(k)});
        if (!fresh) throw ValidationError(where + ": second action on the same altruism pair");
      }
    }
  }

  const BnpgInstance& inst() const { return inst_; }
  const AltruismNetwork& alt_in() const { return alt_in_; }
  const Profile& target() const { return target_; }
  const ActionMenu& menu() const { return menu_; }
  Mode mode() const { return mode_; }
  std::optional<double> budget() const { return budget_; }
  int num_actions() const { return static_cast<int>(menu_.size()); }

  // Directed (row, col, weight) matrix entries affected by one unit of
  // action k. Undirected altruism expands each pair to both orientations;
  // uniform-graph actions carry the graph's strength as entry weight.
  std::vector<std::tuple<int, int, double>> action_entries(int k) const {
    std::vector<std::tuple<int, int, double>> out;
    const double base = alt_in_.is_uniform() ? alt_in_.uniform().strength : 1.0;
    const bool undirected = alt_in_.is_uniform() && !alt_in_.uniform().directed;
    const Action& act = menu_[k];
    for (size_t e = 0; e < act.edges.size(); ++e) {
      auto [i, j] = act.edges[e];
      const double w = base * (act.weights.empty() ? 1.0 : act.weights[e]);
      out.emplace_back(i, j, w);
      if (undirected) out.emplace_back(j, i, w);
    }
    return out;
  }

  // Applies a fractional spend vector, returning the dense modified network.
  AltruismNetwork apply_fractional(const std::vector<double>& spend) const {
    std::vector<double> w = alt_in_.dense();
    const int n = inst_.n();
    for (int k = 0; k < num_actions(); ++k) {
      if (spend[k] == 0.0) continue;
      for (auto [i, j, weight] : action_entries(k))
        w[static_cast<size_t>(i) * n + j] += spend[k] * menu_[k].sign * weight;
    }
    return AltruismNetwork::matrix_dense(n, std::move(w));
  }

  // Applies a binary action subset to a uniform-graph network by toggling
  // edges; requires graph-mode altruism.
  AltruismNetwork apply_binary(const std::vector<uint8_t>& chosen) const {
    if (!alt_in_.is_uniform()) throw ModeError("binary application needs uniform-graph altruism");
    const auto& g = alt_in_.uniform();
    std::set<std::pair<int, int>> edges(g.edges.begin(), g.edges.end());
    for (int k = 0; k < num_actions(); ++k) {
      if (!chosen[k]) continue;
      auto [i, j] = menu_[k].edges[0];
      auto key = canonical_pair(i, j);
      if (menu_[k].sign > 0)
        edges.insert(key);
      else
        edges.erase(key);
    }
    return AltruismNetwork::graph(inst_.n(), g.directed, g.strength,
                                  std::vector<std::pair<int, int>>(edges.begin(), edges.end()));
  }

  AnmProblem with_mode(Mode m) const {
    AnmProblem p = *this;
    p.mode_ = m;
    return p;
  }

 private:
  std::pair<int, int> canonical_pair(int i, int j) const {
    const bool undirected = alt_in_.is_uniform() && !alt_in_.uniform().directed;
    if (undirected && i > j) std::swap(i, j);
    return {i, j};
  }

  BnpgInstance inst_;
  AltruismNetwork alt_in_;
  Profile target_;
  ActionMenu menu_;
  Mode mode_;
  std::optional<double> budget_;
};

enum class SolutionStatus { Optimal, Approximate, Infeasible };

/// Solver output: per-action spending, its total cost, the modified network,
/// and the quality claim. Infeasible solutions carry no spend vector.
struct Solution {
  SolutionStatus status = SolutionStatus::Infeasible;
  std::vector<double> spend;
  double total_cost = 0.0;
  std::optional<AltruismNetwork> alt_out;
  double ratio_bound = 1.0;  // Approximate only

  static Solution infeasible() { return Solution{}; }

  static Solution optimal(std::vector<double> spend, double cost, AltruismNetwork alt) {
    Solution s;
    s.status = SolutionStatus::Optimal;
    s.spend = std::move(spend);
    s.total_cost = cost;
    s.alt_out = std::move(alt);
    return s;
  }

  static Solution approximate(std::vector<double> spend, double cost, AltruismNetwork alt, double ratio) {
    Solution s = optimal(std::move(spend), cost, std::move(alt));
    s.status = SolutionStatus::Approximate;
    s.ratio_bound = ratio;
    return s;
  }
};

}  // namespace anm
