#include "fudist/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

#include "fudist/errors.hpp"
#include "fudist/local_search.hpp"
#include "fudist/random.hpp"

namespace fudist {

std::size_t CommutantStructure::parameter_count() const {
  std::size_t total = 0;
  for (const auto& c : clusters) total += c.size * c.size;
  return total;
}

CommutantStructure commutant_structure(const ComplexMatrix& rho_b, double degeneracy_tol) {
  if (!(degeneracy_tol > 0.0)) throw DomainError("commutant_structure: degeneracy_tol must be positive");
  auto es = hermitian_eig(rho_b);
  CommutantStructure s;
  s.rho_b = rho_b;
  s.eigenvalues = es.eigenvalues;
  s.eigenbasis = std::move(es.eigenvectors);
  const std::size_t n = s.eigenvalues.size();
  std::size_t begin = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    if (k == n || s.eigenvalues[k] - s.eigenvalues[k - 1] > degeneracy_tol) {
      s.clusters.push_back({begin, k - begin});
      begin = k;
    }
  }
  return s;
}

namespace {

// V · blockdiag(B_c exp(iH_c)) · V†, with B_c taken from rotated_base = V†WV.
ComplexMatrix unitary_from_params(const CommutantStructure& structure, std::span<const double> params,
                                  const ComplexMatrix* rotated_base) {
  const ComplexMatrix& v = structure.eigenbasis;
  const std::size_t n = v.rows();
  ComplexMatrix inner(n, n);
  std::size_t offset = 0;
  for (const auto& c : structure.clusters) {
    const std::size_t s = c.size;
    ComplexMatrix block;
    if (s == 1) {
      block = ComplexMatrix{{std::polar(1.0, params[offset])}};
    } else {
      ComplexMatrix h(s, s);
      for (std::size_t k = 0; k < s; ++k) h(k, k) = params[offset + k];
      std::size_t p = offset + s;
      for (std::size_t j = 0; j < s; ++j)
        for (std::size_t k = j + 1; k < s; ++k) {
          h(j, k) = Complex(params[p], params[p + 1]);
          h(k, j) = std::conj(h(j, k));
          p += 2;
        }
      block = mat_exp_i_hermitian(h);
    }
    if (rotated_base != nullptr) {
      ComplexMatrix b(s, s);
      for (std::size_t j = 0; j < s; ++j)
        for (std::size_t k = 0; k < s; ++k) b(j, k) = (*rotated_base)(c.begin + j, c.begin + k);
      block = b * block;
    }
    for (std::size_t j = 0; j < s; ++j)
      for (std::size_t k = 0; k < s; ++k) inner(c.begin + j, c.begin + k) = block(j, k);
    offset += s * s;
  }
  return v * inner * v.adjoint();
}

}  // namespace

CyclicUnitary cyclic_unitary_from_params(const CommutantStructure& structure, std::span<const double> params,
                                         const ComplexMatrix* base) {
  if (params.size() != structure.parameter_count()) {
    throw DimensionError("cyclic_unitary_from_params: expected " + std::to_string(structure.parameter_count()) +
                         " parameters, got " + std::to_string(params.size()));
  }
  const std::size_t n = structure.eigenbasis.rows();
  ComplexMatrix rotated_base;
  if (base != nullptr) {
    if (base->rows() != n || base->cols() != n) throw DimensionError("cyclic_unitary_from_params: base has wrong size");
    rotated_base = structure.eigenbasis.adjoint() * (*base) * structure.eigenbasis;
  }
  return make_cyclic_unitary(unitary_from_params(structure, params, base != nullptr ? &rotated_base : nullptr),
                             structure.rho_b);
}

std::vector<double> restart_start_point(std::uint64_t seed, int restart, std::size_t dim) {
  std::vector<double> x(dim, 0.0);
  if (restart == 0) return x;
  Rng rng(seed + static_cast<std::uint64_t>(restart));
  for (auto& v : x) v = rng.uniform(-std::numbers::pi, std::numbers::pi);
  return x;
}

namespace {

bool block_diagonal_in(const CommutantStructure& s, const ComplexMatrix& w) {
  const ComplexMatrix r = s.eigenbasis.adjoint() * w * s.eigenbasis;
  std::vector<std::size_t> owner(r.rows());
  for (std::size_t c = 0; c < s.clusters.size(); ++c)
    for (std::size_t k = 0; k < s.clusters[c].size; ++k) owner[s.clusters[c].begin + k] = c;
  double off = 0.0;
  for (std::size_t i = 0; i < r.rows(); ++i)
    for (std::size_t j = 0; j < r.cols(); ++j)
      if (owner[i] != owner[j]) off += std::norm(r(i, j));
  return std::sqrt(off) <= kTol.cyclic;
}

struct RestartOutcome {
  std::vector<double> x;
  double value = -1.0;
  bool converged = false;
  bool used_base = false;
};

}  // namespace

OptimizationResult maximize_fu(const BipartiteState& state, const OptimizerConfig& config,
                               const std::optional<ComplexMatrix>& hint) {
  if (config.restarts < 1) throw DomainError("maximize_fu: restarts must be at least 1");
  if (config.max_iterations < 0) throw DomainError("maximize_fu: max_iterations must be nonnegative");
  if (!(config.convergence_tol > 0.0)) throw DomainError("maximize_fu: convergence_tol must be positive");

  const CommutantStructure structure = commutant_structure(state.reduced_b(), config.degeneracy_tol);
  const std::size_t dim = structure.parameter_count();

  std::optional<ComplexMatrix> base;
  if (hint && hint->rows() == state.dim_b() && hint->cols() == state.dim_b() &&
      unitarity_defect(*hint) <= kTol.unitary && block_diagonal_in(structure, *hint)) {
    base = *hint;
  }

  ComplexMatrix rotated_base;
  if (base) rotated_base = structure.eigenbasis.adjoint() * (*base) * structure.eigenbasis;

  LocalSearchOptions opts;
  opts.max_iterations = config.max_iterations;
  opts.convergence_tol = config.convergence_tol;

  const auto run = [&](int r) {
    const ComplexMatrix* b = (r == 1 && base) ? &*base : nullptr;
    const ComplexMatrix* rb = b != nullptr ? &rotated_base : nullptr;
    const Objective objective = [&, rb](std::span<const double> x) {
      return fu_distance_squared_unchecked(state, unitary_from_params(structure, x, rb));
    };
    auto x0 = (b != nullptr) ? std::vector<double>(dim, 0.0) : restart_start_point(config.seed, r, dim);
    const LocalSearchResult res = config.method == LocalMethod::NelderMead
                                      ? nelder_mead_maximize(objective, std::move(x0), opts)
                                      : gradient_ascent_maximize(objective, std::move(x0), opts);
    return RestartOutcome{res.x, res.value, res.converged, b != nullptr};
  };

  std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(config.restarts));
  unsigned threads = config.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : config.threads;
  threads = std::min<unsigned>(threads, static_cast<unsigned>(config.restarts));
  if (threads <= 1) {
    for (int r = 0; r < config.restarts; ++r) outcomes[r] = run(r);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (int r = next++; r < config.restarts; r = next++) outcomes[r] = run(r);
      });
    }
    for (auto& th : pool) th.join();
  }

  std::size_t best = 0;
  for (std::size_t r = 1; r < outcomes.size(); ++r)
    if (outcomes[r].value > outcomes[best].value) best = r;

  OptimizationResult result;
  result.restarts_used = config.restarts;
  for (const auto& o : outcomes) {
    result.converged.push_back(o.converged);
    result.restart_values.push_back(std::sqrt(std::max(0.0, o.value)));
  }
  const auto& win = outcomes[best];
  result.best_unitary = cyclic_unitary_from_params(structure, win.x, win.used_base ? &*base : nullptr);
  result.d_estimate = fu_distance(state, result.best_unitary.u);
  return result;
}

}  // namespace fudist
