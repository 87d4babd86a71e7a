#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gradecert::shell {

enum ExitCode : int { kPass = 0, kFail = 1, kInconclusive = 2, kInputError = 3 };

struct CommandResult {
  int exit_code = kPass;
  std::string out;
  std::string err;
};

/// Worker count for fan-out: GRADECERT_MAX_THREADS if set to a positive integer, else 1.
std::size_t max_threads();

struct CertifyRequest {
  std::string algebra_text;
  /// Overrides the poset embedded in the algebra file.
  std::optional<std::string> poset_text;
  /// koszul, standard_koszul, q_koszul, q_koszul:<n>, standard_q_koszul, tight, quadratic, quasi_hereditary,
  /// audit. Empty means audit when a poset is known, else koszul, tight and quadratic.
  std::vector<std::string> checks;
  bool deep = false;
  std::size_t max_length = 16;
  std::uint64_t seed = 0;
};

/// JSON report on `out`. Exit code: 3 on input errors, else 1 if any requested check failed (for audit: an
/// implication was violated), else 2 if any was inconclusive, else 0.
CommandResult cmd_certify(const CertifyRequest& req);

struct GrRequest {
  std::string text;
  /// "gr" (algebra spec input), "tildegr" (order spec input), or "canonical" (the input algebra itself).
  std::string mode = "gr";
};

/// Algebra spec of gr A (keeping the input poset) or of the integral forced grading, in canonical form.
CommandResult cmd_gr(const GrRequest& req);

struct CoxeterRequest {
  /// ball, dcosets, psi, posets, kl, weights.
  std::string sub;
  std::string type;
  std::optional<std::size_t> radius;
  std::string j1, j2, mu, nu;
  std::optional<std::string> x, w;
  /// posets: "minus" or "plus"; with `w` set, the ideal (or coideal) below (above) w is printed instead.
  std::string sign = "minus";
  bool coideal = false;
  /// weights
  std::optional<long long> p;
  std::optional<std::string> jantzen, regular, restricted, dominant;
  bool gamma = false;
  std::optional<long long> bound;
  bool ell = false;
  bool coxeter_number = false;
};

/// Text or CSV, sorted for golden files. UncertifiedAtRadius exits 2 with a radius hint on `err`.
CommandResult cmd_coxeter(const CoxeterRequest& req);

struct CorpusRequest {
  std::string dir;
  std::size_t max_length = 16;
  bool deep = false;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
};

/// Implication audit of every *.json algebra file in `dir` (sorted by file name), fanned out over `threads`.
/// Exit 1 if any implication is violated, 3 if a file does not load.
CommandResult cmd_corpus(const CorpusRequest& req);

}  // namespace gradecert::shell
