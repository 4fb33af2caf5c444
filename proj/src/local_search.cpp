#include "fudist/local_search.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace fudist {

NelderMead::NelderMead(Objective objective, std::vector<double> x0, double initial_step)
    : objective_(std::move(objective)), dim_(x0.size()) {
  const double n = static_cast<double>(std::max<std::size_t>(dim_, 1));
  reflect_ = 1.0;
  expand_ = 1.0 + 2.0 / n;
  contract_ = 0.75 - 1.0 / (2.0 * n);
  shrink_ = 1.0 - 1.0 / n;
  if (dim_ == 1) shrink_ = 0.5;

  vertices_.push_back(x0);
  for (std::size_t i = 0; i < dim_; ++i) {
    auto v = x0;
    v[i] += initial_step;
    vertices_.push_back(std::move(v));
  }
  values_.reserve(vertices_.size());
  for (const auto& v : vertices_) values_.push_back(objective_(v));
  order();
}

std::size_t NelderMead::best_index() const { return 0; }

void NelderMead::order() {
  std::vector<std::size_t> idx(vertices_.size());
  std::iota(idx.begin(), idx.end(), 0);
  // Highest value first; stable so ties keep their earlier position.
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return values_[a] > values_[b]; });
  std::vector<std::vector<double>> v;
  std::vector<double> f;
  for (auto i : idx) {
    v.push_back(std::move(vertices_[i]));
    f.push_back(values_[i]);
  }
  vertices_ = std::move(v);
  values_ = std::move(f);
}

bool NelderMead::converged(double tol) const { return values_.front() - values_.back() <= tol; }

double NelderMead::step() {
  if (dim_ == 0) return values_.front();
  ++iterations_;
  const std::size_t worst = dim_;
  std::vector<double> centroid(dim_, 0.0);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t k = 0; k < dim_; ++k) centroid[k] += vertices_[i][k];
  for (auto& c : centroid) c /= static_cast<double>(dim_);

  const auto along = [&](double t) {
    std::vector<double> x(dim_);
    for (std::size_t k = 0; k < dim_; ++k) x[k] = centroid[k] + t * (vertices_[worst][k] - centroid[k]);
    return x;
  };

  const auto xr = along(-reflect_);
  const double fr = objective_(xr);
  if (fr > values_.front()) {
    auto xe = along(-reflect_ * expand_);
    const double fe = objective_(xe);
    if (fe > fr) {
      vertices_[worst] = std::move(xe);
      values_[worst] = fe;
    } else {
      vertices_[worst] = xr;
      values_[worst] = fr;
    }
  } else if (fr > values_[dim_ - 1]) {
    vertices_[worst] = xr;
    values_[worst] = fr;
  } else if (fr > values_[worst]) {
    // Outside contraction; falling back to the reflected point still improves the worst vertex.
    auto xc = along(-reflect_ * contract_);
    const double fc = objective_(xc);
    if (fc >= fr) {
      vertices_[worst] = std::move(xc);
      values_[worst] = fc;
    } else {
      vertices_[worst] = xr;
      values_[worst] = fr;
    }
  } else {
    auto xc = along(contract_);
    const double fc = objective_(xc);
    if (fc > values_[worst]) {
      vertices_[worst] = std::move(xc);
      values_[worst] = fc;
    } else {
      const auto best = vertices_.front();
      for (std::size_t i = 1; i <= dim_; ++i) {
        for (std::size_t k = 0; k < dim_; ++k) vertices_[i][k] = best[k] + shrink_ * (vertices_[i][k] - best[k]);
        values_[i] = objective_(vertices_[i]);
      }
    }
  }
  order();
  return values_.front();
}

LocalSearchResult nelder_mead_maximize(const Objective& objective, std::vector<double> x0,
                                       const LocalSearchOptions& options) {
  if (options.max_iterations <= 0) {
    LocalSearchResult r;
    r.value = objective(x0);
    r.x = std::move(x0);
    return r;
  }
  NelderMead nm(objective, std::move(x0), options.initial_step);
  bool converged = nm.converged(options.convergence_tol);
  while (!converged && nm.iterations() < options.max_iterations) {
    nm.step();
    converged = nm.converged(options.convergence_tol);
  }
  return {nm.best_point(), nm.best_value(), nm.iterations(), converged};
}

LocalSearchResult gradient_ascent_maximize(const Objective& objective, std::vector<double> x0,
                                           const LocalSearchOptions& options) {
  LocalSearchResult r;
  r.x = std::move(x0);
  r.value = objective(r.x);
  const double h = 1e-6;
  double step = options.initial_step;
  std::vector<double> grad(r.x.size());
  while (r.iterations < options.max_iterations) {
    ++r.iterations;
    double gnorm2 = 0.0;
    for (std::size_t k = 0; k < r.x.size(); ++k) {
      auto xp = r.x;
      auto xm = r.x;
      xp[k] += h;
      xm[k] -= h;
      grad[k] = (objective(xp) - objective(xm)) / (2.0 * h);
      gnorm2 += grad[k] * grad[k];
    }
    const double gnorm = std::sqrt(gnorm2);
    if (gnorm == 0.0) {
      r.converged = true;
      break;
    }
    bool accepted = false;
    while (step > 1e-14) {
      auto trial = r.x;
      for (std::size_t k = 0; k < trial.size(); ++k) trial[k] += step * grad[k] / gnorm;
      const double f = objective(trial);
      if (f > r.value) {
        const double gain = f - r.value;
        r.x = std::move(trial);
        r.value = f;
        accepted = true;
        step *= 1.5;
        if (gain <= options.convergence_tol) r.converged = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      r.converged = true;
      break;
    }
    if (r.converged) break;
  }
  return r;
}

}  // namespace fudist
