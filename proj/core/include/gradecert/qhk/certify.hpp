#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gradecert/qhk/qh.hpp"

namespace gradecert::qhk {

enum class Verdict { Pass, Fail, Inconclusive };
std::string to_string(Verdict v);

/// A violation that can be rechecked on its own: for ext conditions, ext^degree(source lambda, target mu<shift>)
/// is nonzero; for linearity, P(mu)<shift> occurs in term `degree` of the resolution of source lambda.
struct Witness {
  std::optional<std::size_t> lambda;
  std::optional<std::size_t> mu;
  std::optional<std::size_t> degree;
  std::optional<int> shift;
  std::string detail;
};

/// Nonzero dimensions computed for one (source, target) pair. For linearity checks the target is a
/// projective summand index and entries count its multiplicity in each term.
struct ExtEvidence {
  std::string family;
  std::size_t source = 0;
  std::size_t target = 0;
  std::map<std::pair<std::size_t, int>, std::size_t> entries;
};

struct CertReport {
  std::string property;
  Verdict verdict = Verdict::Pass;
  std::optional<Witness> witness;
  std::vector<ExtEvidence> evidence;
  std::vector<std::string> notes;
};

struct CertOptions {
  /// Resolution terms computed per source before giving up with an inconclusive verdict.
  std::size_t max_length = 16;
  bool deep = false;
};

/// A_0 semisimple and every simple has a linear resolution.
CertReport certify_koszul(const AlgebraPtr& a, const CertOptions& opts = {});

/// Koszul, and every Delta(lambda) is linear over A and every Delta(lambda) of the opposite algebra
/// (the dual of nabla(lambda)) is linear over A^op.
CertReport certify_standard_koszul(const QHStructure& q, const CertOptions& opts = {});

/// ext^i(Delta_0(lambda), nabla^0(mu)<j>) = 0 for j != i and 0 < i <= n (all i when n is empty).
/// Only A_0 has to be quasi-hereditary; throws A0NotQuasiHereditary otherwise.
CertReport certify_q_koszul(const AlgebraPtr& a, const WeightPoset& poset, std::optional<std::size_t> n = std::nullopt,
                            const CertOptions& opts = {});
CertReport certify_q_koszul(const QHStructure& q, std::optional<std::size_t> n = std::nullopt,
                            const CertOptions& opts = {});

/// Both purity conditions between Delta / nabla_0 and Delta^0 / nabla, for all n >= 0. A pass is cross-checked
/// against certify_q_koszul and the outcome recorded in the notes.
CertReport certify_standard_q_koszul(const QHStructure& q, const CertOptions& opts = {});

CertReport check_tight(const AlgebraPtr& a);

/// Throws TightnessRequired when A is not tight.
CertReport check_quadratic(const AlgebraPtr& a);

/// Never throws NotQuasiHereditary; a failure becomes a Fail verdict.
CertReport certify_quasi_hereditary(const AlgebraPtr& a, const WeightPoset& poset, const CertOptions& opts = {});

struct AuditReport {
  std::vector<CertReport> reports;
  /// Each entry names an implication whose premise passed and whose conclusion definitely failed.
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Runs every applicable certifier and checks the implications between them.
AuditReport implication_audit(const AlgebraPtr& a, const WeightPoset& poset, const CertOptions& opts = {});

/// Verdicts for quasi_hereditary, positively_graded, koszul, standard_koszul, q_koszul and standard_q_koszul.
/// Properties whose preconditions fail are reported as "n/a".
std::map<std::string, std::string> property_vector(const AlgebraPtr& a, const WeightPoset& poset,
                                                   const CertOptions& opts = {});

}  // namespace gradecert::qhk
