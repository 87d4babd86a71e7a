#include "gradecert/qhk/qh.hpp"

#include <algorithm>
#include <string>

namespace gradecert::qhk {

using gmod::Matrix;
using gmod::SparseMatrix;
using gmod::Vector;

std::vector<GradedModule> standard_modules(const SimpleSystem& sys, const WeightPoset& poset) {
  std::vector<GradedModule> out;
  for (std::size_t l = 0; l < sys.count(); ++l) {
    const GradedModule& p = sys.projectives[l];
    std::vector<Vector> gens;
    for (std::size_t m = 0; m < sys.count(); ++m) {
      if (poset.leq(m, l)) continue;
      for (std::size_t i = 0; i < p.dim(); ++i) gens.push_back(p.act(sys.idempotents[m], p.basis_vector(i)));
    }
    out.push_back(gmod::quotient_module(p, gmod::generated_subspace(p, gens)).module);
  }
  return out;
}

std::optional<std::string> heredity_chain_failure(const AlgebraPtr& a, const SimpleSystem& sys,
                                                  const WeightPoset& poset) {
  AlgebraPtr cur = a;
  std::vector<Vector> reps = sys.idempotents;
  std::vector<std::size_t> remaining;
  for (std::size_t l = 0; l < sys.count(); ++l) remaining.push_back(l);

  while (!remaining.empty()) {
    const std::size_t l = poset.maximal_in(remaining).front();
    const Vector& e = reps[l];
    const std::string tag = "layer for simple " + std::to_string(l) + ": ";
    if (la::is_zero(e)) return tag + "idempotent vanished in an earlier quotient";
    const auto& alg = *cur;
    for (const auto& r : alg.radical().row_vectors())
      if (!la::is_zero(alg.multiply(alg.multiply(e, r), e))) return tag + "e rad(A) e is nonzero";
    std::vector<Vector> ae, ea;
    for (std::size_t i = 0; i < alg.dim(); ++i) {
      ae.push_back(alg.multiply(alg.basis_vector(i), e));
      ea.push_back(alg.multiply(e, alg.basis_vector(i)));
    }
    la::SubspaceBuilder aeb(alg.field(), alg.dim()), eab(alg.field(), alg.dim());
    for (const auto& v : ae) aeb.add(v);
    for (const auto& v : ea) eab.add(v);
    auto j = alg::product_span(alg, aeb.rows(), eab.rows());
    // AeA is projective as a left module iff Ae (x)_{eAe} eA -> AeA is injective; eAe = k here.
    if (j.dim() != aeb.dim() * eab.dim())
      return tag + "dim AeA = " + std::to_string(j.dim()) + " but dim Ae * dim eA = " +
             std::to_string(aeb.dim() * eab.dim());
    remaining.erase(std::find(remaining.begin(), remaining.end(), l));
    if (j.dim() == alg.dim()) {
      if (!remaining.empty()) return tag + "AeA is the whole algebra before the chain ends";
      return std::nullopt;
    }
    if (remaining.empty()) return std::string("heredity chain ends in a nonzero algebra");
    alg::Quotient q = alg::quotient_algebra(alg, j.rows());
    for (auto& r : reps) r = q.project(r);
    cur = q.algebra;
  }
  return std::nullopt;
}

QHStructure build_qh(const AlgebraPtr& a, const WeightPoset& poset, QHOptions opts) {
  QHStructure q;
  q.algebra = a;
  q.poset = poset;
  q.sys = gmod::simples_and_projectives(a);
  require(poset.size() == q.sys->count(), ErrorKind::InvalidArgument,
          "poset has " + std::to_string(poset.size()) + " elements but the algebra has " +
              std::to_string(q.sys->count()) + " simples");
  q.opposite = a->opposite();
  q.sys_op = gmod::simples_and_projectives(q.opposite);
  require(q.sys_op->idempotents == q.sys->idempotents, ErrorKind::Internal,
          "simple indexing differs between the algebra and its opposite");

  q.standards = standard_modules(*q.sys, poset);
  q.op_standards = standard_modules(*q.sys_op, poset);
  for (const auto& d : q.op_standards) q.costandards.push_back(gmod::dual_module(d, a));

  std::optional<std::string> failure;
  std::size_t total = 0;
  for (std::size_t l = 0; l < q.sys->count(); ++l) total += q.standards[l].dim() * q.costandards[l].dim();
  if (total != a->dim())
    failure = "dimension identity: dim A = " + std::to_string(a->dim()) + " but sum dim Delta * dim nabla = " +
              std::to_string(total);
  for (std::size_t l = 0; l < q.sys->count() && !failure; ++l) {
    auto plain = gmod::forget_grading(q.standards[l]);
    const std::size_t end = gmod::hom_degree_zero(plain, plain).size();
    if (end != 1) failure = "End(Delta(" + std::to_string(l) + ")) has dimension " + std::to_string(end);
  }

  if (opts.deep) {
    auto deep = heredity_chain_failure(a, *q.sys, poset);
    if (deep.has_value() != failure.has_value())
      fail(ErrorKind::Internal, "quasi-heredity tests disagree: fast says " +
                                    (failure ? *failure : std::string("pass")) + ", heredity chain says " +
                                    (deep ? *deep : std::string("pass")));
    q.deep_verified = !deep;
  }
  if (failure) fail(ErrorKind::NotQuasiHereditary, a->name() + ": " + *failure);
  q.verified = true;

  for (const auto& d : q.standards) {
    std::vector<Vector> pos;
    for (std::size_t i = 0; i < d.dim(); ++i)
      if (d.grade(i) > 0) pos.push_back(d.basis_vector(i));
    q.grade0_standards.push_back(gmod::quotient_module(d, pos).module);
  }
  for (const auto& n : q.costandards) {
    std::vector<Vector> zero;
    for (std::size_t i : n.indices_of_grade(0)) zero.push_back(n.basis_vector(i));
    q.grade0_costandards.push_back(gmod::submodule_on_basis(n, zero));
  }
  return q;
}

GradedModule inflate_from_grade_zero(const AlgebraPtr& a, const GradedModule& x) {
  const std::vector<std::size_t> idx = a->indices_of_grade(0);
  require(x.algebra()->dim() == idx.size(), ErrorKind::InvalidArgument, "module is not over A_0");
  std::vector<SparseMatrix> actions(a->dim(), SparseMatrix(a->field(), x.dim(), x.dim()));
  for (std::size_t r = 0; r < idx.size(); ++r) actions[idx[r]] = x.action(r);
  return GradedModule::make_unchecked(a, std::vector<int>(x.dim(), 0), std::move(actions), true);
}

GradeZeroQH grade_zero_qh(const AlgebraPtr& a, const SimpleSystem& sys, const WeightPoset& poset) {
  GradeZeroQH out;
  alg::Subalgebra sub = alg::grade_zero_subalgebra(*a);
  out.a0 = sub.algebra;
  try {
    out.qh0 = build_qh(out.a0, poset);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NotQuasiHereditary) fail(ErrorKind::A0NotQuasiHereditary, e.what());
    throw;
  }
  const std::vector<std::size_t> idx = a->indices_of_grade(0);
  require(out.qh0.sys->count() == sys.count(), ErrorKind::Internal, "A_0 and A have different simple counts");
  for (std::size_t l = 0; l < sys.count(); ++l) {
    Vector restricted;
    for (std::size_t i : idx) restricted.push_back(sys.idempotents[l][i]);
    require(restricted == out.qh0.sys->idempotents[l], ErrorKind::Internal,
            "simple indexing differs between A and A_0");
  }
  for (const auto& d : out.qh0.standards) out.standards.push_back(inflate_from_grade_zero(a, d));
  for (const auto& n : out.qh0.costandards) out.costandards.push_back(inflate_from_grade_zero(a, n));
  return out;
}

}  // namespace gradecert::qhk
