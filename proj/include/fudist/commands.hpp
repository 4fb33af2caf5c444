#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fudist/chsh.hpp"
#include "fudist/fu.hpp"

namespace fudist {

// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;     // verification failed
inline constexpr int kExitBadInput = 2;    // malformed file or invalid arguments
inline constexpr int kExitInvariant = 3;   // state violates a density-matrix invariant
inline constexpr int kExitNumerical = 4;   // eigensolver did not converge

inline constexpr const char* kSchema = "fudist-v1";

struct OracleOptions {
  bool enabled = false;
  std::uint64_t seed = 0;
  int restarts = 32;
  unsigned threads = 1;
};

struct StateSpec {
  std::string family;  // pseudopure | werner | horodecki-a | horodecki-alpha | upb | file
  std::string file;
  std::size_t dim = 2;
  double p = 0.0;
  double epsilon = 1.0;
  double a = 0.5;
  double alpha = 3.0;
  std::vector<double> coeffs;  // empty: maximally entangled
};

struct Verdict {
  std::string verdict;
  std::string criterion;
};

/// Entanglement verdict for a state of the given dims. d may be absent when
/// neither a closed form nor an oracle value is available.
std::vector<Verdict> detection_verdicts(std::size_t m, std::size_t n, std::optional<double> d, double purity_bound,
                                        const std::optional<ChshReport>& chsh);

int run_analyze(const StateSpec& spec, const OracleOptions& oracle, std::ostream& out, std::ostream& err);

struct ScanOptions {
  StateSpec state;  // family and fixed parameters; the swept one is ignored
  double start = 0.0;
  double stop = 1.0;
  int steps = 101;
  std::string out_path;  // empty: standard output
};

/// Sweeps the family parameter (pseudopure: a_m, werner: p, horodecki-a: a,
/// horodecki-alpha: α, upb and file: white-noise weight t) and writes CSV.
int run_scan(const ScanOptions& scan, const OracleOptions& oracle, std::ostream& out, std::ostream& err);

struct VerifyOptions {
  std::uint64_t seed = 42;
  int instances = 10;  // per family
  int restarts = 32;
  unsigned threads = 1;
  std::string replay_path = "fudist-replay.json";
  bool inject_fault = false;  // perturbs one closed form to exercise the failure path
};

int run_verify(const VerifyOptions& options, std::ostream& out, std::ostream& err);

}  // namespace fudist
