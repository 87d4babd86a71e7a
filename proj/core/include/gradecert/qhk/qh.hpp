#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gradecert/gradmod/module.hpp"
#include "gradecert/qhk/poset.hpp"

namespace gradecert::qhk {

using alg::AlgebraPtr;
using gmod::GradedModule;
using gmod::SimpleSystem;

struct QHOptions {
  /// Also walk a heredity chain along a linear extension of the poset.
  bool deep = false;
};

struct QHStructure {
  AlgebraPtr algebra;
  AlgebraPtr opposite;
  WeightPoset poset;
  std::shared_ptr<const SimpleSystem> sys;
  std::shared_ptr<const SimpleSystem> sys_op;
  /// Delta(lambda), head in grade 0.
  std::vector<GradedModule> standards;
  /// Delta(lambda) for the opposite algebra; the graded dual of costandards[lambda].
  std::vector<GradedModule> op_standards;
  /// nabla(lambda), socle in grade 0 and grades <= 0.
  std::vector<GradedModule> costandards;
  /// Delta(lambda) / Delta(lambda)_{>0}.
  std::vector<GradedModule> grade0_standards;
  /// The grade 0 submodule of nabla(lambda).
  std::vector<GradedModule> grade0_costandards;
  bool verified = false;
  bool deep_verified = false;
};

/// P(lambda) modulo the trace of every P(mu) with mu not <= lambda.
std::vector<GradedModule> standard_modules(const SimpleSystem& sys, const WeightPoset& poset);

/// Throws NotQuasiHereditary naming the failing criterion.
QHStructure build_qh(const AlgebraPtr& a, const WeightPoset& poset, QHOptions opts = {});

/// Heredity chain along a linear extension; returns a description of the first failure.
std::optional<std::string> heredity_chain_failure(const AlgebraPtr& a, const SimpleSystem& sys,
                                                  const WeightPoset& poset);

/// A_0-modules regarded as graded A-modules concentrated in grade 0 (A_{>0} acts by zero).
struct GradeZeroQH {
  AlgebraPtr a0;
  QHStructure qh0;
  std::vector<GradedModule> standards;    // Delta_0(lambda) as A-modules
  std::vector<GradedModule> costandards;  // nabla^0(lambda) as A-modules
};

/// Throws A0NotQuasiHereditary when A_0 fails for this poset.
GradeZeroQH grade_zero_qh(const AlgebraPtr& a, const SimpleSystem& sys, const WeightPoset& poset);

GradedModule inflate_from_grade_zero(const AlgebraPtr& a, const GradedModule& x);

}  // namespace gradecert::qhk
