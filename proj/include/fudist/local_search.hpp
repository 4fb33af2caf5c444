#pragma once

#include <functional>
#include <span>
#include <vector>

namespace fudist {

using Objective = std::function<double(std::span<const double>)>;

struct LocalSearchOptions {
  int max_iterations = 2000;
  double convergence_tol = 1e-10;  // on the spread of objective values
  double initial_step = 0.5;
};

struct LocalSearchResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Nelder–Mead maximizer with dimension-adaptive coefficients. Each call to
/// step() performs one iteration; the best vertex value never decreases.
class NelderMead {
 public:
  NelderMead(Objective objective, std::vector<double> x0, double initial_step);

  /// One reflect/expand/contract/shrink iteration. Returns the best value.
  double step();

  /// Spread between best and worst vertex values is at most tol.
  bool converged(double tol) const;

  const std::vector<double>& best_point() const { return vertices_[best_index()]; }
  double best_value() const { return values_[best_index()]; }
  int iterations() const { return iterations_; }

 private:
  std::size_t best_index() const;
  void order();

  Objective objective_;
  std::size_t dim_;
  std::vector<std::vector<double>> vertices_;
  std::vector<double> values_;
  int iterations_ = 0;
  double reflect_, expand_, contract_, shrink_;
};

LocalSearchResult nelder_mead_maximize(const Objective& objective, std::vector<double> x0,
                                       const LocalSearchOptions& options);

/// Steepest ascent with central finite-difference gradients and backtracking;
/// a step is accepted only if it increases the objective.
LocalSearchResult gradient_ascent_maximize(const Objective& objective, std::vector<double> x0,
                                           const LocalSearchOptions& options);

}  // namespace fudist
