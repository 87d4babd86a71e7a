#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "gradecert/algcore/algebra.hpp"
#include "gradecert/forcegr/forcegr.hpp"
#include "gradecert/qhk/certify.hpp"

namespace gradecert::shell {

struct AlgebraFile {
  alg::AlgebraPtr algebra;
  /// Present when the document carries a "poset" block.
  std::optional<qhk::WeightPoset> poset;
};

/// Algebra spec document: either structure constants (`dim`, `labels`, `mult`, `unit`, `grades`) or a `quiver`
/// block. Throws Parse naming the line (syntax errors) or the field path (e.g. "/mult/3/2"); validation errors
/// from build_algebra propagate with their own kinds.
AlgebraFile parse_algebra_spec(std::string_view text);

/// Canonical form: structure constants sorted by (i, j, k), scalars as strings, fixed key order, one
/// structure constant per line. Quiver-presented algebras are written out with their radical basis.
std::string emit_algebra_spec(const alg::GradedAlgebra& a, const std::optional<qhk::WeightPoset>& poset = std::nullopt);

/// {"size": n, "relations": [[a, b], ...]} with a < b.
qhk::WeightPoset parse_poset(std::string_view text);

/// {"kind": "order", "name", "prime", "dim", "labels", "mult", "unit", optional "idempotents"}.
fgr::IntegralOrder parse_order_spec(std::string_view text);
std::string emit_order_spec(const fgr::IntegralOrder& o);

/// Stable field names: property, verdict, witness, evidence, notes.
std::string report_to_json(const qhk::CertReport& r);

}  // namespace gradecert::shell
