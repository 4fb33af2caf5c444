#include "fudist/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "fudist/errors.hpp"
#include "fudist/optimizer.hpp"
#include "fudist/random.hpp"
#include "fudist/state_io.hpp"

namespace fudist {

using json = nlohmann::ordered_json;

namespace {

constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;
constexpr std::size_t kOracleMaxDim = 100;
constexpr double kOracleTolerance = 2e-4;

std::string fmt(double v, const char* spec = "%.12g") {
  if (v == 0.0) v = 0.0;  // no "-0"
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string fmt_opt(const std::optional<double>& v) { return v ? fmt(*v) : std::string(); }

// Everything the commands need to know about one state instance.
struct Evaluated {
  std::string family;
  std::size_t m = 0;
  std::size_t n = 0;
  double purity = 0.0;
  std::optional<BipartiteState> state;  // absent for formula-only Werner states
  std::optional<FuReport> closed;
  std::optional<HorodeckiAlphaDistance> alpha_shift;
  std::optional<double> alpha_bound;
  std::optional<double> upb_bound;
  std::optional<OptimizationResult> oracle;
  std::optional<ChshReport> chsh;

  double bound_classical() const { return fudist::bound_classical(m, n); }
  double bound_purity() const { return fudist::bound_purity(purity, m * n); }
  std::optional<double> best_d() const {
    if (closed) return closed->d_value;
    if (oracle) return oracle->d_estimate;
    return std::nullopt;
  }
};

std::string horodecki_alpha_regime(double alpha) {
  if (alpha <= 3.0) return "separable";
  if (alpha <= 4.0) return "bound entangled";
  return "free entangled";
}

std::vector<double> pseudopure_coeffs(const StateSpec& spec) {
  if (spec.dim < 2) throw DomainError("pseudopure: --dim must be at least 2");
  if (!spec.coeffs.empty()) return spec.coeffs;
  return std::vector<double>(spec.dim, 1.0 / std::sqrt(static_cast<double>(spec.dim)));
}

Evaluated build(const StateSpec& spec) {
  Evaluated e;
  e.family = spec.family;
  if (spec.family == "pseudopure") {
    const auto coeffs = pseudopure_coeffs(spec);
    e.closed = dmax_pseudopure(coeffs, spec.epsilon, spec.dim, spec.dim);
    e.state = pseudopure(pure_from_schmidt(coeffs, spec.dim, spec.dim), spec.epsilon);
  } else if (spec.family == "werner") {
    if (spec.dim * spec.dim <= kOracleMaxDim) {
      e.closed = dmax_werner(spec.dim, spec.p);
      e.state = werner(spec.dim, spec.p);
    } else {
      // Formula only: the dense state and witness would not fit in memory for large D.
      FuReport r;
      r.d_value = werner_dmax_value(spec.dim, spec.p);
      r.closed_form_source = ClosedFormSource::Werner;
      r.bounds = {bound_classical(spec.dim, spec.dim), bound_purity(werner_purity(spec.dim, spec.p), spec.dim * spec.dim)};
      e.closed = std::move(r);
      e.m = e.n = spec.dim;
      e.purity = werner_purity(spec.dim, spec.p);
    }
  } else if (spec.family == "horodecki-a") {
    e.closed = dmax_horodecki_a(spec.a);
    e.state = horodecki_rho_a(spec.a);
  } else if (spec.family == "horodecki-alpha") {
    e.alpha_shift = fu_horodecki_alpha(spec.alpha);
    e.alpha_bound = horodecki_alpha_bound(spec.alpha);
    e.state = horodecki_rho_alpha(spec.alpha);
  } else if (spec.family == "upb") {
    e.state = upb_tiles_state();
    e.upb_bound = bound_upb(9, upb_tiles_vectors().size());
  } else if (spec.family == "file") {
    if (spec.file.empty()) throw DomainError("--file is required for the file family");
    e.state = load_state(spec.file);
    e.closed = closed_form_for_state(*e.state);
  } else {
    throw DomainError("unknown family \"" + spec.family + "\"");
  }
  if (e.state) {
    e.m = e.state->dim_a();
    e.n = e.state->dim_b();
    e.purity = e.state->purity();
    if (e.m == 2 && e.n == 2) e.chsh = horodecki_m(fano_decompose(*e.state));
  }
  return e;
}

void run_oracle(Evaluated& e, const OracleOptions& oracle, std::uint64_t seed) {
  if (!oracle.enabled || !e.state) return;
  if (e.state->total_dim() > kOracleMaxDim) return;
  OptimizerConfig cfg;
  cfg.seed = seed;
  cfg.restarts = oracle.restarts;
  cfg.threads = oracle.threads;
  std::optional<ComplexMatrix> hint;
  if (e.closed && e.closed->witness) hint = e.closed->witness->u;
  e.oracle = maximize_fu(*e.state, cfg, hint);
}

std::string verdict_text(const Verdict& v) { return v.verdict + " [" + v.criterion + "]"; }

Evaluated evaluate(const StateSpec& spec, const OracleOptions& oracle, std::uint64_t seed) {
  Evaluated e = build(spec);
  run_oracle(e, oracle, seed);
  return e;
}

std::vector<Verdict> verdicts_for(const Evaluated& e) {
  return detection_verdicts(e.m, e.n, e.best_d(), e.bound_purity(), e.chsh);
}

template <typename F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const FormatError& ex) {
    err << "error: malformed input: " << ex.what() << '\n';
    return kExitBadInput;
  } catch (const InvariantError& ex) {
    err << "error: invariant violated: " << ex.what() << '\n';
    return kExitInvariant;
  } catch (const ConvergenceError& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitNumerical;
  } catch (const std::invalid_argument& ex) {  // DomainError, DimensionError
    err << "error: invalid argument: " << ex.what() << '\n';
    return kExitBadInput;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace

std::vector<Verdict> detection_verdicts(std::size_t m, std::size_t n, std::optional<double> d, double purity_bound,
                                        const std::optional<ChshReport>& chsh) {
  std::vector<Verdict> out;
  const bool two_qubit = m == 2 && n == 2;
  if (two_qubit && d && *d > bound_classical(2, 2)) {
    out.push_back({"entanglement certified", "classical bound exceeded: d_max > 1/sqrt(2)"});
  } else if (purity_bound <= kInvSqrt2) {
    out.push_back({"cannot certify entanglement", "purity bound: d_max <= " + fmt(purity_bound) + " <= 1/sqrt(2)"});
  } else if (!d) {
    out.push_back({"undetermined", "no closed form for this state; rerun with --oracle"});
  } else if (two_qubit) {
    out.push_back({"cannot certify entanglement", "classical bound not exceeded: d_max <= 1/sqrt(2)"});
  } else {
    out.push_back({"criterion inconclusive above 2x2", "classical bound not known to be tight above 2x2"});
  }
  if (chsh) {
    out.push_back({chsh->violates ? "CHSH violation" : "no CHSH violation",
                   "CHSH: M = " + fmt(chsh->m_value) + (chsh->violates ? " > 1" : " <= 1")});
  }
  return out;
}

// ---------------------------------------------------------------------------

int run_analyze(const StateSpec& spec, const OracleOptions& oracle, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (oracle.enabled && spec.family == "werner" && spec.dim * spec.dim > kOracleMaxDim) {
      throw DomainError("the oracle is limited to total dimension " + std::to_string(kOracleMaxDim));
    }
    const Evaluated e = evaluate(spec, oracle, oracle.seed);
    json j;
    j["schema"] = kSchema;
    j["state"] = {{"family", e.family}, {"m", e.m}, {"n", e.n}, {"purity", e.purity}};
    if (e.closed) {
      json c = {{"source", std::string(to_string(e.closed->closed_form_source))}, {"d_max", e.closed->d_value}};
      if (e.closed->witness && e.state) {
        c["witness"] = {{"d", fu_distance(*e.state, e.closed->witness->u)},
                        {"cyclicity_residual", e.closed->witness->cyclicity_residual},
                        {"unitarity_residual", e.closed->witness->unitarity_residual}};
      }
      j["closed_form"] = std::move(c);
    } else {
      j["closed_form"] = nullptr;
    }
    if (e.oracle) {
      const auto converged = std::count(e.oracle->converged.begin(), e.oracle->converged.end(), true);
      j["oracle"] = {{"d_max", e.oracle->d_estimate},
                     {"restarts", e.oracle->restarts_used},
                     {"converged_restarts", converged},
                     {"seed", oracle.seed},
                     {"cyclicity_residual", e.oracle->best_unitary.cyclicity_residual}};
    } else {
      j["oracle"] = nullptr;
    }
    j["bounds"] = {{"classical", e.bound_classical()}, {"purity", e.bound_purity()}};
    if (e.upb_bound) j["bounds"]["upb"] = *e.upb_bound;
    if (e.alpha_shift) {
      j["horodecki_alpha"] = {{"alpha", spec.alpha},
                              {"d_shift", e.alpha_shift->d_value},
                              {"bound", *e.alpha_bound},
                              {"regime", horodecki_alpha_regime(spec.alpha)}};
    }
    if (e.chsh) {
      j["chsh"] = {{"m", e.chsh->m_value},
                   {"tau", {e.chsh->tau.first, e.chsh->tau.second}},
                   {"violates", e.chsh->violates}};
    } else {
      j["chsh"] = nullptr;
    }
    json verdicts = json::array();
    for (const auto& v : verdicts_for(e)) verdicts.push_back({{"verdict", v.verdict}, {"criterion", v.criterion}});
    j["verdicts"] = std::move(verdicts);
    out << j.dump(2) << '\n';
    return kExitOk;
  });
}

// ---------------------------------------------------------------------------

int run_scan(const ScanOptions& scan, const OracleOptions& oracle, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (scan.steps < 2) throw DomainError("--steps must be at least 2");
    if (!(scan.start < scan.stop)) throw DomainError("--start must be below --stop");
    const std::string& family = scan.state.family;

    std::string param = "t";
    if (family == "pseudopure") param = "a_m";
    if (family == "werner") param = "p";
    if (family == "horodecki-a") param = "a";
    if (family == "horodecki-alpha") param = "alpha";

    std::optional<BipartiteState> base;  // for upb and file
    if (family == "upb") base = upb_tiles_state();
    if (family == "file") {
      if (scan.state.file.empty()) throw DomainError("--file is required for the file family");
      base = load_state(scan.state.file);
    }

    std::ostringstream csv;
    csv << "# " << kSchema << '\n';
    csv << param << (family == "horodecki-alpha" ? ",d_shift" : ",closed_form")
        << ",oracle,bound_classical,bound_purity,chsh_m,verdict\n";

    for (int i = 0; i < scan.steps; ++i) {
      const double x = (i == scan.steps - 1)
                           ? scan.stop
                           : scan.start + (scan.stop - scan.start) * static_cast<double>(i) / (scan.steps - 1);
      Evaluated e;
      StateSpec spec = scan.state;
      if (family == "pseudopure") {
        const std::size_t n = spec.dim;
        if (n < 2) throw DomainError("pseudopure: --dim must be at least 2");
        if (x > 1.0 || x < 1.0 / std::sqrt(static_cast<double>(n)) - 1e-6) {
          throw DomainError("pseudopure: a_m must lie in [1/sqrt(N), 1] to be the largest coefficient");
        }
        const double am = std::min(1.0, x);
        const double rest = std::sqrt(std::max(0.0, (1.0 - am * am) / static_cast<double>(n - 1)));
        spec.coeffs.assign(n, rest);
        spec.coeffs[0] = am;
      } else if (family == "werner") {
        spec.p = x;
      } else if (family == "horodecki-a") {
        spec.a = x;
      } else if (family == "horodecki-alpha") {
        spec.alpha = x;
      } else if (family != "upb" && family != "file") {
        throw DomainError("unknown family \"" + family + "\"");
      }

      if (base) {
        if (!(x >= 0.0 && x <= 1.0)) throw DomainError("white-noise weight t must lie in [0, 1]");
        e.family = family;
        e.state = mix_with_white_noise(*base, x);
        e.m = e.state->dim_a();
        e.n = e.state->dim_b();
        e.purity = e.state->purity();
        e.closed = closed_form_for_state(*e.state);
        if (e.m == 2 && e.n == 2) e.chsh = horodecki_m(fano_decompose(*e.state));
        run_oracle(e, oracle, oracle.seed + static_cast<std::uint64_t>(i));
      } else {
        e = evaluate(spec, oracle, oracle.seed + static_cast<std::uint64_t>(i));
      }

      std::optional<double> primary;
      std::string verdict;
      if (e.alpha_shift) {
        primary = e.alpha_shift->d_value;
        verdict = horodecki_alpha_regime(x) + " [d_shift interval of the alpha range]";
      } else {
        if (e.closed) primary = e.closed->d_value;
        std::string joined;
        for (const auto& v : verdicts_for(e)) joined += (joined.empty() ? "" : "; ") + verdict_text(v);
        verdict = joined;
      }
      const std::string oracle_cell = e.oracle ? fmt(e.oracle->d_estimate) : std::string();
      const std::string chsh_cell = e.chsh ? fmt(e.chsh->m_value) : std::string();
      csv << fmt(x) << ',' << fmt_opt(primary) << ',' << oracle_cell << ',' << fmt(e.bound_classical()) << ','
          << fmt(e.bound_purity()) << ',' << chsh_cell << ',' << verdict << '\n';
    }

    if (scan.out_path.empty()) {
      out << csv.str();
    } else {
      std::ofstream file(scan.out_path, std::ios::binary);
      if (!file) throw std::runtime_error("cannot write " + scan.out_path);
      file << csv.str();
      if (!file) throw std::runtime_error("cannot write " + scan.out_path);
    }
    return kExitOk;
  });
}

// ---------------------------------------------------------------------------

namespace {

struct Instance {
  BipartiteState state;
  FuReport closed;
  ComplexMatrix witness;  // already in the frame of `state`
  json parameters;
};

Instance make_instance(const std::string& family, Rng& rng) {
  if (family == "pseudopure") {
    const std::size_t m = 2 + rng.index(3);
    const std::size_t n = 2 + rng.index(3);
    const auto coeffs = random_schmidt_coefficients(rng, std::min(m, n));
    const double eps = 1.0 - rng.uniform01();
    const ComplexMatrix ua = random_unitary(rng, m);
    const ComplexMatrix ub = random_unitary(rng, n);
    FuReport r = dmax_pseudopure(coeffs, eps, m, n);
    BipartiteState s = apply_local_unitaries(pseudopure(pure_from_schmidt(coeffs, m, n), eps), ua, ub);
    ComplexMatrix w = ub * r.witness->u * ub.adjoint();
    return {std::move(s), std::move(r), std::move(w), {{"m", m}, {"n", n}, {"epsilon", eps}, {"coeffs", coeffs}}};
  }
  if (family == "werner") {
    const std::size_t d = 2 + rng.index(3);
    const double p = rng.uniform01();
    FuReport r = dmax_werner(d, p);
    ComplexMatrix w = r.witness->u;
    return {werner(d, p), std::move(r), std::move(w), {{"d", d}, {"p", p}}};
  }
  if (family == "two-qubit-diag-t") {
    BipartiteState s = random_diag_t_state(rng);
    FuReport r = dmax_two_qubit_diag_t(fano_decompose(s));
    ComplexMatrix w = r.witness->u;
    return {std::move(s), std::move(r), std::move(w), json::object()};
  }
  const double a = rng.uniform(0.05, 0.95);
  FuReport r = dmax_horodecki_a(a);
  ComplexMatrix w = r.witness->u;
  return {horodecki_rho_a(a), std::move(r), std::move(w), {{"a", a}}};
}

struct FamilyStats {
  int count = 0;
  double max_discrepancy = 0.0;
  double max_overshoot = -1.0;      // oracle − formula
  double max_purity_excess = -1.0;  // d − purity bound
  double max_witness_error = 0.0;
  bool ok = true;
};

}  // namespace

int run_verify(const VerifyOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (options.instances < 1) throw DomainError("--instances must be at least 1");
    const std::vector<std::string> families{"pseudopure", "werner", "two-qubit-diag-t", "horodecki-a"};

    std::optional<json> replay;
    std::vector<FamilyStats> stats(families.size());
    for (std::size_t f = 0; f < families.size(); ++f) {
      Rng rng(options.seed + 0x100000ULL * (f + 1));
      auto& st = stats[f];
      for (int i = 0; i < options.instances; ++i) {
        Instance inst = make_instance(families[f], rng);
        double formula = inst.closed.d_value;
        if (options.inject_fault && f == 0 && i == 0) formula += 1e-3;

        OptimizerConfig cfg;
        cfg.restarts = options.restarts;
        cfg.threads = options.threads;
        cfg.seed = options.seed + static_cast<std::uint64_t>(i);
        const OptimizationResult opt = maximize_fu(inst.state, cfg);
        const double purity_bound = bound_purity(inst.state);
        const CyclicUnitary w = make_cyclic_unitary(inst.witness, inst.state.reduced_b());
        const double witness_error = std::abs(fu_distance(inst.state, w.u) - formula);

        std::vector<std::string> failures;
        const double discrepancy = std::abs(opt.d_estimate - formula);
        if (discrepancy > kOracleTolerance) failures.push_back("oracle differs from closed form");
        if (opt.d_estimate > formula + 1e-8) failures.push_back("oracle exceeds closed form");
        if (std::max(opt.d_estimate, formula) > purity_bound + 1e-8) failures.push_back("purity bound violated");
        if (witness_error > 1e-8 || !w.is_cyclic()) failures.push_back("witness does not reproduce closed form");
        if (opt.best_unitary.cyclicity_residual > kTol.cyclic) failures.push_back("oracle unitary is not cyclic");

        ++st.count;
        st.max_discrepancy = std::max(st.max_discrepancy, discrepancy);
        st.max_overshoot = std::max(st.max_overshoot, opt.d_estimate - formula);
        st.max_purity_excess = std::max(st.max_purity_excess, std::max(opt.d_estimate, formula) - purity_bound);
        st.max_witness_error = std::max(st.max_witness_error, witness_error);
        if (!failures.empty()) {
          st.ok = false;
          if (!replay) {
            replay = json{{"schema", kSchema},
                          {"family", families[f]},
                          {"instance", i},
                          {"seed", options.seed},
                          {"parameters", inst.parameters},
                          {"closed_form", formula},
                          {"oracle", opt.d_estimate},
                          {"failures", failures},
                          {"state", json::parse(state_to_json(inst.state))}};
          }
        }
      }
    }

    char line[256];
    out << "# " << kSchema << " verify\n";
    out << "seed " << options.seed << ", instances per family " << options.instances << ", restarts "
        << options.restarts << '\n';
    std::snprintf(line, sizeof line, "%-18s %5s %14s %14s %14s %14s  %s\n", "family", "n", "max|orc-cf|",
                  "max(orc-cf)", "max(d-purity)", "witness err", "status");
    out << line;
    bool all_ok = true;
    for (std::size_t f = 0; f < families.size(); ++f) {
      const auto& st = stats[f];
      all_ok = all_ok && st.ok;
      std::snprintf(line, sizeof line, "%-18s %5d %14.3e %14.3e %14.3e %14.3e  %s\n", families[f].c_str(), st.count,
                    st.max_discrepancy, st.max_overshoot, st.max_purity_excess, st.max_witness_error,
                    st.ok ? "PASS" : "FAIL");
      out << line;
    }
    if (all_ok) {
      out << "overall PASS\n";
      return kExitOk;
    }
    std::ofstream file(options.replay_path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot write replay file " + options.replay_path);
    file << replay->dump(2) << '\n';
    out << "overall FAIL, first failing instance written to " << options.replay_path << '\n';
    return kExitFailure;
  });
}

}  // namespace fudist
