#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <tuple>
#include <utility>
#include <variant>
#include <vector>

#include "anm/common.hpp"

namespace anm {

/// Simple undirected loop-free graph over agents 0..n-1; the edges encode
/// whose investments affect whose payoff.
class StrategicGraph {
 public:
  StrategicGraph() = default;

  StrategicGraph(int n, const std::vector<std::pair<int, int>>& edges) : n_(n), adj_(n) {
    if (n < 1) throw ValidationError("agent count must be at least 1");
    present_.assign(static_cast<size_t>(n) * n, false);
    for (auto [i, j] : edges) {
      check_pair(i, j);
      if (i == j) throw ValidationError("strategic edge (" + std::to_string(i) + "," + std::to_string(j) + ") is a loop");
      if (has_edge(i, j))
        throw ValidationError("duplicate strategic edge (" + std::to_string(i) + "," + std::to_string(j) + ")");
      present_[static_cast<size_t>(i) * n + j] = true;
      present_[static_cast<size_t>(j) * n + i] = true;
      adj_[i].push_back(j);
      adj_[j].push_back(i);
    }
    for (auto& a : adj_) std::sort(a.begin(), a.end());
  }

  int n() const { return n_; }
  int degree(int i) const { return static_cast<int>(adj_[i].size()); }
  const std::vector<int>& neighbors(int i) const { return adj_[i]; }
  bool has_edge(int i, int j) const { return present_[static_cast<size_t>(i) * n_ + j]; }

  // Unordered edges in canonical (i < j) order.
  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < n_; ++i)
      for (int j : adj_[i])
        if (i < j) out.emplace_back(i, j);
    return out;
  }

  void check_pair(int i, int j) const {
    if (i < 0 || i >= n_ || j < 0 || j >= n_)
      throw ValidationError("agent index out of range in pair (" + std::to_string(i) + "," + std::to_string(j) + ")");
  }

 private:
  int n_ = 0;
  std::vector<std::vector<int>> adj_;
  std::vector<bool> present_;
};

/// Per-agent benefit g(x, n): either a dense table (two rows, one column per
/// investing-neighbor count) or the linear-in-n shorthand h_x + b*n.
struct BenefitTable {
  std::vector<double> row0;  // g(0, n), n = 0..deg
  std::vector<double> row1;  // g(1, n)
};

struct BenefitUsl {
  double h0 = 0.0;
  double h1 = 0.0;
  double b = 0.0;
};

class BenefitFunction {
 public:
  static BenefitFunction table(std::vector<double> row0, std::vector<double> row1) {
    BenefitFunction f;
    f.repr_ = BenefitTable{std::move(row0), std::move(row1)};
    return f;
  }
  static BenefitFunction usl(double h0, double h1, double b) {
    BenefitFunction f;
    f.repr_ = BenefitUsl{h0, h1, b};
    return f;
  }

  bool is_usl_repr() const { return std::holds_alternative<BenefitUsl>(repr_); }
  const BenefitTable* as_table() const { return std::get_if<BenefitTable>(&repr_); }
  const BenefitUsl* as_usl() const { return std::get_if<BenefitUsl>(&repr_); }

  double operator()(int x, int n) const {
    if (auto* u = std::get_if<BenefitUsl>(&repr_)) return (x ? u->h1 : u->h0) + u->b * n;
    const auto& t = std::get<BenefitTable>(repr_);
    return x ? t.row1[n] : t.row0[n];
  }

  // Validates nonnegativity and monotonicity in both arguments for the given
  // strategic degree; `who` names the agent in error messages.
  void validate(int deg, int who) const {
    const std::string agent = "benefit of agent " + std::to_string(who);
    if (auto* u = std::get_if<BenefitUsl>(&repr_)) {
      if (!(u->h0 >= 0.0) || !std::isfinite(u->h0)) throw ValidationError(agent + ": h0 must be >= 0");
      if (!(u->h1 >= u->h0) || !std::isfinite(u->h1)) throw ValidationError(agent + ": h1 must be >= h0");
      if (!(u->b >= 0.0) || !std::isfinite(u->b)) throw ValidationError(agent + ": slope b must be >= 0");
      return;
    }
    const auto& t = std::get<BenefitTable>(repr_);
    if (static_cast<int>(t.row0.size()) != deg + 1 || static_cast<int>(t.row1.size()) != deg + 1)
      throw ValidationError(agent + ": table rows must have degree+1 = " + std::to_string(deg + 1) + " columns");
    for (int n = 0; n <= deg; ++n) {
      if (!std::isfinite(t.row0[n]) || !std::isfinite(t.row1[n]) || t.row0[n] < 0.0 || t.row1[n] < 0.0)
        throw ValidationError(agent + ": values must be finite and >= 0");
      if (t.row1[n] < t.row0[n])
        throw ValidationError(agent + ": non-decreasing in own investment violated at n=" + std::to_string(n));
      if (n > 0 && (t.row0[n] < t.row0[n - 1] || t.row1[n] < t.row1[n - 1]))
        throw ValidationError(agent + ": row must be non-decreasing in n (column " + std::to_string(n) + ")");
    }
  }

 private:
  std::variant<BenefitTable, BenefitUsl> repr_;
};

/// A binary networked public goods game: strategic graph, per-agent benefit
/// functions, per-agent investment costs.
class BnpgInstance {
 public:
  BnpgInstance(StrategicGraph graph, std::vector<BenefitFunction> benefits, std::vector<double> costs)
      : graph_(std::move(graph)), benefits_(std::move(benefits)), costs_(std::move(costs)) {
    const int n = graph_.n();
    if (static_cast<int>(benefits_.size()) != n) throw ValidationError("need one benefit function per agent");
    if (static_cast<int>(costs_.size()) != n) throw ValidationError("need one cost per agent");
    for (int i = 0; i < n; ++i) {
      benefits_[i].validate(graph_.degree(i), i);
      if (!std::isfinite(costs_[i]) || costs_[i] < 0.0)
        throw ValidationError("cost of agent " + std::to_string(i) + " must be finite and >= 0");
    }
  }

  int n() const { return graph_.n(); }
  const StrategicGraph& graph() const { return graph_; }
  const BenefitFunction& benefit(int i) const { return benefits_[i]; }
  const std::vector<BenefitFunction>& benefits() const { return benefits_; }
  double cost(int i) const { return costs_[i]; }
  const std::vector<double>& costs() const { return costs_; }

 private:
  StrategicGraph graph_;
  std::vector<BenefitFunction> benefits_;
  std::vector<double> costs_;
};

/// Altruism network: either a full nonnegative weight matrix (diagonal fixed
/// at 1, never read by the utilities) or a uniform-strength graph.
struct UniformAltruism {
  bool directed = false;
  double strength = 1.0;
  // Directed: pairs as given. Undirected: canonical i < j.
  std::vector<std::pair<int, int>> edges;
};

class AltruismNetwork {
 public:
  static AltruismNetwork matrix(int n, const std::vector<std::tuple<int, int, double>>& entries) {
    AltruismNetwork a;
    a.n_ = n;
    a.weights_.assign(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) a.weights_[static_cast<size_t>(i) * n + i] = 1.0;
    std::set<std::pair<int, int>> seen;
    for (auto& [i, j, w] : entries) {
      if (i < 0 || i >= n || j < 0 || j >= n)
        throw ValidationError("altruism entry (" + std::to_string(i) + "," + std::to_string(j) + ") out of range");
      if (i == j) throw ValidationError("altruism entry (" + std::to_string(i) + "," + std::to_string(j) + ") is diagonal");
      if (!seen.insert({i, j}).second)
        throw ValidationError("duplicate altruism entry (" + std::to_string(i) + "," + std::to_string(j) + ")");
      if (!std::isfinite(w) || w < 0.0)
        throw ValidationError("altruism weight at (" + std::to_string(i) + "," + std::to_string(j) + ") must be >= 0");
      a.weights_[static_cast<size_t>(i) * n + j] = w;
    }
    return a;
  }

  static AltruismNetwork matrix_dense(int n, std::vector<double> weights) {
    AltruismNetwork a;
    a.n_ = n;
    a.weights_ = std::move(weights);
    for (int i = 0; i < n; ++i) a.weights_[static_cast<size_t>(i) * n + i] = 1.0;
    return a;
  }

  static AltruismNetwork graph(int n, bool directed, double strength,
                               const std::vector<std::pair<int, int>>& edges) {
    if (!(strength > 0.0) || !std::isfinite(strength))
      throw ValidationError("uniform altruism strength must be > 0");
    AltruismNetwork a;
    a.n_ = n;
    UniformAltruism g;
    g.directed = directed;
    g.strength = strength;
    std::set<std::pair<int, int>> seen;
    for (auto [i, j] : edges) {
      if (i < 0 || i >= n || j < 0 || j >= n)
        throw ValidationError("altruism edge (" + std::to_string(i) + "," + std::to_string(j) + ") out of range");
      if (i == j) throw ValidationError("altruism edge (" + std::to_string(i) + "," + std::to_string(j) + ") is a loop");
      auto key = directed ? std::pair{i, j} : std::pair{std::min(i, j), std::max(i, j)};
      if (!seen.insert(key).second)
        throw ValidationError("duplicate altruism edge (" + std::to_string(i) + "," + std::to_string(j) + ")");
      g.edges.push_back(key);
    }
    std::sort(g.edges.begin(), g.edges.end());
    a.uniform_ = std::move(g);
    return a;
  }

  int n() const { return n_; }
  bool is_uniform() const { return uniform_.has_value(); }
  const UniformAltruism& uniform() const { return *uniform_; }

  double alpha(int i, int j) const {
    if (uniform_) {
      auto key = uniform_->directed ? std::pair{i, j} : std::pair{std::min(i, j), std::max(i, j)};
      return std::binary_search(uniform_->edges.begin(), uniform_->edges.end(), key) ? uniform_->strength : 0.0;
    }
    return weights_[static_cast<size_t>(i) * n_ + j];
  }

  bool has_uniform_edge(int i, int j) const {
    auto key = uniform_->directed ? std::pair{i, j} : std::pair{std::min(i, j), std::max(i, j)};
    return std::binary_search(uniform_->edges.begin(), uniform_->edges.end(), key);
  }

  // Expands to a dense weight matrix (diagonal 1).
  std::vector<double> dense() const {
    if (!uniform_) return weights_;
    std::vector<double> w(static_cast<size_t>(n_) * n_, 0.0);
    for (int i = 0; i < n_; ++i) w[static_cast<size_t>(i) * n_ + i] = 1.0;
    for (auto [i, j] : uniform_->edges) {
      w[static_cast<size_t>(i) * n_ + j] = uniform_->strength;
      if (!uniform_->directed) w[static_cast<size_t>(j) * n_ + i] = uniform_->strength;
    }
    return w;
  }

 private:
  int n_ = 0;
  std::vector<double> weights_;             // dense storage when not uniform
  std::optional<UniformAltruism> uniform_;  // set in graph mode
};

/// Binary investment profile.
class Profile {
 public:
  Profile() = default;
  explicit Profile(std::vector<uint8_t> x) : x_(std::move(x)) {
    for (auto v : x_)
      if (v != 0 && v != 1) throw ValidationError("profile entries must be 0 or 1");
  }

  int n() const { return static_cast<int>(x_.size()); }
  bool invests(int i) const { return x_[i] != 0; }
  uint8_t operator[](int i) const { return x_[i]; }
  const std::vector<uint8_t>& bits() const { return x_; }

  Profile flipped(int i) const {
    Profile p = *this;
    p.x_[i] ^= 1;
    return p;
  }

  std::vector<int> investors() const {
    std::vector<int> s;
    for (int i = 0; i < n(); ++i)
      if (invests(i)) s.push_back(i);
    return s;
  }

  bool operator==(const Profile&) const = default;

 private:
  std::vector<uint8_t> x_;
};

/// Per-agent constants of the equilibrium inequality system for a fixed
/// target profile: investing-neighbor count, own marginal benefit, the
/// one-neighbor marginal benefits in both directions (absent where the
/// benefit table has no such column), and the threshold theta.
struct TargetDerivation {
  std::vector<int> n_invest;
  std::vector<double> own_marginal;
  std::vector<std::optional<double>> delta_minus;  // g(x, n) - g(x, n-1), needs n >= 1
  std::vector<std::optional<double>> delta_plus;   // g(x, n+1) - g(x, n), needs n <= deg-1
  std::vector<double> theta;                       // cost - own_marginal
};

inline int count_investing_neighbors(const BnpgInstance& inst, const Profile& profile, int i) {
  int c = 0;
  for (int j : inst.graph().neighbors(i)) c += profile[j];
  return c;
}

/// Utility from own investment alone: g_i(x_i, n_i) - c_i * x_i.
inline double egocentric_utility(const BnpgInstance& inst, const Profile& profile, int i) {
  const int ni = count_investing_neighbors(inst, profile, i);
  return inst.benefit(i)(profile[i], ni) - inst.cost(i) * profile[i];
}

/// Egocentric utility plus altruism-weighted benefits of strategic neighbors.
inline double altruistic_utility(const BnpgInstance& inst, const AltruismNetwork& alt, const Profile& profile,
                                 int i) {
  double u = egocentric_utility(inst, profile, i);
  for (int j : inst.graph().neighbors(i)) {
    const int nj = count_investing_neighbors(inst, profile, j);
    u += alt.alpha(i, j) * inst.benefit(j)(profile[j], nj);
  }
  return u;
}

inline TargetDerivation derive_targets(const BnpgInstance& inst, const Profile& target) {
  const int n = inst.n();
  if (target.n() != n) throw ValidationError("profile length does not match agent count");
  TargetDerivation d;
  d.n_invest.resize(n);
  d.own_marginal.resize(n);
  d.delta_minus.resize(n);
  d.delta_plus.resize(n);
  d.theta.resize(n);
  for (int i = 0; i < n; ++i) {
    const auto& g = inst.benefit(i);
    const int deg = inst.graph().degree(i);
    const int ni = count_investing_neighbors(inst, target, i);
    d.n_invest[i] = ni;
    d.own_marginal[i] = g(1, ni) - g(0, ni);
    if (ni >= 1) d.delta_minus[i] = g(target[i], ni) - g(target[i], ni - 1);
    if (ni <= deg - 1) d.delta_plus[i] = g(target[i], ni + 1) - g(target[i], ni);
    d.theta[i] = inst.cost(i) - d.own_marginal[i];
  }
  return d;
}

/// Equilibrium check via the per-agent inequality system: investors need
/// altruism-weighted withdrawal losses of at least theta, non-investors need
/// altruism-weighted joining gains of at most theta.
inline bool is_psne_ineq(const BnpgInstance& inst, const AltruismNetwork& alt, const Profile& profile,
                         double tol = kDefaultTol) {
  const TargetDerivation d = derive_targets(inst, profile);
  for (int i = 0; i < inst.n(); ++i) {
    KahanSum lhs;
    for (int j : inst.graph().neighbors(i)) {
      const auto& delta = profile.invests(i) ? d.delta_minus[j] : d.delta_plus[j];
      lhs.add(alt.alpha(i, j) * *delta);
    }
    if (profile.invests(i)) {
      if (lhs.value() < d.theta[i] - tol) return false;
    } else {
      if (lhs.value() > d.theta[i] + tol) return false;
    }
  }
  return true;
}

/// Equilibrium check by direct single-agent deviation: nobody strictly gains
/// (beyond tol) from flipping their own investment.
inline bool is_psne_deviation(const BnpgInstance& inst, const AltruismNetwork& alt, const Profile& profile,
                              double tol = kDefaultTol) {
  for (int i = 0; i < inst.n(); ++i) {
    const double stay = altruistic_utility(inst, alt, profile, i);
    const double dev = altruistic_utility(inst, alt, profile.flipped(i), i);
    if (dev > stay + tol) return false;
  }
  return true;
}

/// Benefit-class report used for solver routing.
struct BenefitClass {
  enum Kind { General, PolynomialBounded, Usl } kind = General;
  double bound = 0.0;  // max |g| over the domain, PolynomialBounded only
  double slope = 0.0;  // the common per-neighbor marginal, Usl only
};

/// Classifies the instance's benefits. Usl requires a common per-neighbor
/// slope across all agents (tables qualify when both rows are arithmetic with
/// the same difference). Instances made only of tables fall back to
/// PolynomialBounded with the max table value; anything else is General.
inline BenefitClass classify_benefits(const BnpgInstance& inst, double tol = kDefaultTol) {
  bool usl_ok = true;
  bool slope_known = false;
  double slope = 0.0;
  bool all_tables = true;
  double max_abs = 0.0;

  auto propose_slope = [&](double b) {
    if (!slope_known) {
      slope_known = true;
      slope = b;
    } else if (std::abs(slope - b) > tol) {
      usl_ok = false;
    }
  };

  for (int i = 0; i < inst.n(); ++i) {
    const auto& g = inst.benefit(i);
    const int deg = inst.graph().degree(i);
    for (int x = 0; x <= 1; ++x)
      for (int n = 0; n <= deg; ++n) max_abs = std::max(max_abs, std::abs(g(x, n)));
    if (auto* u = g.as_usl()) {
      all_tables = false;
      propose_slope(u->b);
      continue;
    }
    const auto* t = g.as_table();
    if (deg >= 1) {
      const double b0 = t->row0[1] - t->row0[0];
      for (int n = 1; n <= deg; ++n) {
        if (std::abs((t->row0[n] - t->row0[n - 1]) - b0) > tol ||
            std::abs((t->row1[n] - t->row1[n - 1]) - b0) > tol) {
          usl_ok = false;
          break;
        }
      }
      if (usl_ok) propose_slope(b0);
    }
  }

  BenefitClass out;
  if (usl_ok) {
    out.kind = BenefitClass::Usl;
    out.slope = slope_known ? slope : 0.0;
  } else if (all_tables) {
    out.kind = BenefitClass::PolynomialBounded;
    out.bound = max_abs;
  } else {
    out.kind = BenefitClass::General;
  }
  return out;
}

}  // namespace anm
