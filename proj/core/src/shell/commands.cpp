#include "gradecert/shell/commands.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "gradecert/forcegr/forcegr.hpp"
#include "gradecert/qhk/certify.hpp"
#include "gradecert/shell/spec_io.hpp"
#include "gradecert/weyl/coxeter.hpp"
#include "gradecert/weyl/kl.hpp"
#include "gradecert/weyl/weights.hpp"
#include "json.hpp"
#include "json_format.hpp"

namespace gradecert::shell {

namespace {

using ojson = nlohmann::ordered_json;

ojson report_json(const qhk::CertReport& r) { return ojson::parse(report_to_json(r)); }

CommandResult input_error(const std::string& what) { return {kInputError, "", what + "\n"}; }

qhk::CertReport failed(const std::string& property, const std::string& why) {
  qhk::CertReport r;
  r.property = property;
  r.verdict = qhk::Verdict::Fail;
  r.witness = qhk::Witness{};
  r.witness->detail = why;
  return r;
}

int combine(bool any_fail, bool any_inconclusive) {
  if (any_fail) return kFail;
  return any_inconclusive ? kInconclusive : kPass;
}

ojson algebra_header(const alg::GradedAlgebra& a) {
  ojson j;
  j["name"] = a.name();
  j["field"] = a.field().to_string();
  j["dim"] = a.dim();
  return j;
}

// Runs one named check. Definitions that presuppose quasi-heredity fail when it is absent.
qhk::CertReport run_check(const std::string& check, const alg::AlgebraPtr& a, const std::optional<qhk::WeightPoset>& poset,
                          const qhk::CertOptions& opts) {
  auto need_poset = [&]() -> const qhk::WeightPoset& {
    require(poset.has_value(), ErrorKind::InvalidArgument, "check '" + check + "' needs a weight poset");
    return *poset;
  };
  if (check == "koszul") return qhk::certify_koszul(a, opts);
  if (check == "tight") return qhk::check_tight(a);
  if (check == "quadratic") {
    try {
      return qhk::check_quadratic(a);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::TightnessRequired) throw;
      return failed("quadratic", e.what());
    }
  }
  if (check == "quasi_hereditary") return qhk::certify_quasi_hereditary(a, need_poset(), opts);
  if (check == "q_koszul" || check.rfind("q_koszul:", 0) == 0) {
    std::optional<std::size_t> n;
    if (check != "q_koszul") {
      const std::string digits = check.substr(9);
      require(!digits.empty() && digits.find_first_not_of("0123456789") == std::string::npos,
              ErrorKind::InvalidArgument, "bad check '" + check + "'");
      n = std::stoul(digits);
    }
    try {
      return qhk::certify_q_koszul(a, need_poset(), n, opts);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::A0NotQuasiHereditary) throw;
      return failed(n ? "q_koszul(" + std::to_string(*n) + ")" : "q_koszul", e.what());
    }
  }
  if (check == "standard_koszul" || check == "standard_q_koszul") {
    qhk::QHStructure q;
    try {
      q = qhk::build_qh(a, need_poset(), {opts.deep});
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NotQuasiHereditary) throw;
      return failed(check, e.what());
    }
    return check == "standard_koszul" ? qhk::certify_standard_koszul(q, opts) : qhk::certify_standard_q_koszul(q, opts);
  }
  fail(ErrorKind::InvalidArgument, "unknown check '" + check + "'");
}

ojson audit_json(const qhk::AuditReport& audit) {
  ojson j = ojson::object();
  ojson reps = ojson::array();
  for (const auto& r : audit.reports) reps.push_back(report_json(r));
  j["reports"] = reps;
  j["violations"] = audit.violations;
  return j;
}

std::string dump(const ojson& j) {
  std::string out;
  pretty(j, out);
  return out + "\n";
}

}  // namespace

std::size_t max_threads() {
  const char* v = std::getenv("GRADECERT_MAX_THREADS");
  if (!v) return 1;
  char* end = nullptr;
  const unsigned long n = std::strtoul(v, &end, 10);
  if (end == v || *end != '\0' || n == 0) return 1;
  return std::min<unsigned long>(n, 256);
}

CommandResult cmd_certify(const CertifyRequest& req) {
  AlgebraFile file;
  try {
    file = parse_algebra_spec(req.algebra_text);
    if (req.poset_text) file.poset = parse_poset(*req.poset_text);
  } catch (const Error& e) {
    return input_error(e.what());
  }
  qhk::CertOptions opts;
  opts.max_length = req.max_length;
  opts.deep = req.deep;

  ojson doc = algebra_header(*file.algebra);
  doc["seed"] = req.seed;
  std::vector<std::string> checks = req.checks;
  if (checks.empty()) checks = file.poset ? std::vector<std::string>{"audit"} : std::vector<std::string>{"koszul", "tight", "quadratic"};
  bool any_fail = false, any_inconclusive = false;
  ojson reports = ojson::array();
  try {
    for (const auto& check : checks) {
      if (check == "audit") {
        require(file.poset.has_value(), ErrorKind::InvalidArgument, "check 'audit' needs a weight poset");
        const auto audit = qhk::implication_audit(file.algebra, *file.poset, opts);
        doc["audit"] = audit_json(audit);
        any_fail = any_fail || !audit.ok();
        continue;
      }
      const auto rep = run_check(check, file.algebra, file.poset, opts);
      any_fail = any_fail || rep.verdict == qhk::Verdict::Fail;
      any_inconclusive = any_inconclusive || rep.verdict == qhk::Verdict::Inconclusive;
      reports.push_back(report_json(rep));
    }
  } catch (const Error& e) {
    return input_error(e.what());
  }
  if (!reports.empty()) doc["reports"] = reports;
  return {combine(any_fail, any_inconclusive), dump(doc), ""};
}

CommandResult cmd_gr(const GrRequest& req) {
  try {
    if (req.mode == "gr") {
      const AlgebraFile file = parse_algebra_spec(req.text);
      const auto g = fgr::gr_algebra(file.algebra);
      // The idempotents of gr A are the images of those of A, in the same order.
      return {kPass, emit_algebra_spec(*g.algebra, file.poset), ""};
    }
    if (req.mode == "canonical") {
      const AlgebraFile file = parse_algebra_spec(req.text);
      return {kPass, emit_algebra_spec(*file.algebra, file.poset), ""};
    }
    if (req.mode == "tildegr") {
      const auto order = parse_order_spec(req.text);
      const auto t = fgr::tilde_gr(order);
      return {kPass, emit_algebra_spec(*t.algebra), ""};
    }
    return input_error("unknown mode '" + req.mode + "' (expected gr, tildegr or canonical)");
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::RadicalUnavailable)
      return input_error(std::string(e.what()) +
                         "\nsupported regimes: rational field, F_p with p > dim, a quiver presentation, or an explicit "
                         "radical_basis");
    return input_error(e.what());
  }
}

namespace {

using namespace weyl;

IntVec parse_weight(const std::string& text, std::size_t rank) {
  IntVec out;
  std::string cleaned = text;
  std::replace(cleaned.begin(), cleaned.end(), ',', ' ');
  std::istringstream in(cleaned);
  long long v;
  while (in >> v) out.push_back(v);
  require(in.eof() && out.size() == rank, ErrorKind::Parse,
          "expected " + std::to_string(rank) + " comma-separated integers, got '" + text + "'");
  return out;
}

std::string radius_hint(const GroupPtr& g) {
  if (g->is_affine()) return "the set is infinite in an affine group; no radius certifies it";
  return "rerun with --radius " + std::to_string(g->datum().positive_roots.size()) + " (the length of the longest element)";
}

std::size_t radius_for(const CoxeterRequest& req, const GroupPtr& g) {
  if (req.radius) return *req.radius;
  require(!g->is_affine(), ErrorKind::InvalidArgument, "--radius is required for affine types");
  return g->datum().positive_roots.size();
}

std::string poset_text(const CoxPoset& p) {
  std::vector<std::string> names;
  for (const auto& x : p.elements) names.push_back(x.to_string());
  std::ostringstream os;
  os << "# " << p.elements.size() << " elements, " << (p.opposite ? "opposite Bruhat order" : "Bruhat order") << "\n";
  std::vector<std::pair<std::size_t, std::string>> sorted;
  for (std::size_t i = 0; i < p.elements.size(); ++i) sorted.emplace_back(p.elements[i].length(), names[i]);
  std::sort(sorted.begin(), sorted.end());
  for (const auto& [len, name] : sorted) os << name << "\n";
  os << "# covers\n" << edge_list(p);
  return os.str();
}

std::string run_coxeter(const CoxeterRequest& req, std::string& hint) {
  if (req.sub == "weights") {
    const bool needs_p = req.jantzen || req.regular || req.restricted || req.dominant || req.ell || req.gamma;
    if (!req.p && req.coxeter_number && !needs_p)
      return std::to_string(parse_root_datum(req.type).coxeter_number) + "\n";
    require(req.p.has_value(), ErrorKind::InvalidArgument, "weights needs --p");
    const WeightPredicates wp(parse_root_datum(req.type), *req.p);
    const std::size_t rank = wp.datum().rank;
    std::ostringstream os;
    auto boolean = [](bool b) { return std::string(b ? "true" : "false"); };
    if (req.jantzen) os << boolean(wp.in_jantzen_region(parse_weight(*req.jantzen, rank))) << "\n";
    if (req.regular) os << boolean(wp.is_p_regular(parse_weight(*req.regular, rank))) << "\n";
    if (req.restricted) os << boolean(wp.is_restricted(parse_weight(*req.restricted, rank))) << "\n";
    if (req.dominant) os << boolean(wp.is_dominant(parse_weight(*req.dominant, rank))) << "\n";
    if (req.ell) os << wp.ell_of_p() << "\n";
    if (req.coxeter_number) os << wp.coxeter_number() << "\n";
    if (req.gamma) {
      auto members = wp.gamma_res_reg_members(req.bound);
      std::sort(members.begin(), members.end());
      for (const auto& m : members) {
        for (std::size_t i = 0; i < m.size(); ++i) os << (i ? "," : "") << m[i];
        os << "\n";
      }
    }
    require(!os.str().empty(), ErrorKind::InvalidArgument,
            "weights needs one of --jantzen, --regular, --restricted, --dominant, --gamma, --ell, --coxeter-number");
    return os.str();
  }

  const GroupPtr g = CoxGroup::parse(req.type);
  if (req.sub == "psi") {
    require(req.x.has_value(), ErrorKind::InvalidArgument, "psi needs --x");
    return psi(g->parse_word(*req.x), g->parse_subset(req.mu), g->parse_subset(req.nu)).to_string() + "\n";
  }

  const CoxBall ball(g, radius_for(req, g));
  if (req.sub == "ball") {
    std::vector<std::pair<std::size_t, std::string>> rows;
    for (std::size_t i = 0; i < ball.size(); ++i) rows.emplace_back(ball.length(i), ball.element(i).to_string());
    std::sort(rows.begin(), rows.end());
    std::ostringstream os;
    for (const auto& [len, name] : rows) os << name << " " << len << "\n";
    return os.str();
  }
  if (req.sub == "dcosets") {
    auto cosets = regular_double_cosets(ball, g->parse_subset(req.j1), g->parse_subset(req.j2));
    std::sort(cosets.begin(), cosets.end(), [](const DoubleCoset& a, const DoubleCoset& b) {
      return std::make_pair(a.min_rep.length(), a.min_rep.to_string()) < std::make_pair(b.min_rep.length(), b.min_rep.to_string());
    });
    std::ostringstream os;
    os << "min,max,size,regular\n";
    for (const auto& c : cosets)
      os << c.min_rep.to_string() << "," << c.max_rep.to_string() << "," << c.size << "," << (c.regular ? "yes" : "no")
         << "\n";
    return os.str();
  }
  if (req.sub == "posets") {
    const Sign sign = req.sign == "plus" ? Sign::Plus : Sign::Minus;
    require(req.sign == "plus" || req.sign == "minus", ErrorKind::InvalidArgument, "--sign must be minus or plus");
    const CoxPoset p = parabolic_singular_posets(ball, g->parse_subset(req.mu), g->parse_subset(req.nu), sign);
    if (!req.w) return poset_text(p);
    const CoxElement w = g->parse_word(*req.w);
    hint = radius_hint(g);
    return poset_text(req.coideal ? poset_coideal(p, w) : poset_ideal(p, w));
  }
  if (req.sub == "kl") {
    const KLTable t(ball);
    if (req.x || req.w) {
      require(req.x && req.w, ErrorKind::InvalidArgument, "kl needs both --x and --w, or neither");
      const KLPoly p = t.polynomial(g->parse_word(*req.x), g->parse_word(*req.w));
      return to_string(p) + "\n";
    }
    // csv() lists by ball index; re-sort rows for stable output.
    std::istringstream in(t.csv());
    std::string header, line;
    std::getline(in, header);
    std::vector<std::string> rows;
    while (std::getline(in, line)) rows.push_back(line);
    std::sort(rows.begin(), rows.end());
    std::string out = header + "\n";
    for (const auto& r : rows) out += r + "\n";
    return out;
  }
  fail(ErrorKind::InvalidArgument, "unknown coxeter subcommand '" + req.sub + "'");
}

}  // namespace

CommandResult cmd_coxeter(const CoxeterRequest& req) {
  std::string hint;
  try {
    return {kPass, run_coxeter(req, hint), ""};
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::UncertifiedAtRadius) return {kInconclusive, "", std::string(e.what()) + "; " + hint + "\n"};
    return input_error(e.what());
  }
}

CommandResult cmd_corpus(const CorpusRequest& req) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(req.dir, ec))
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  if (ec) return input_error("cannot read corpus directory " + req.dir + ": " + ec.message());
  std::sort(files.begin(), files.end());

  struct Slot {
    ojson entry;
    bool violated = false;
    std::string error;
  };
  std::vector<Slot> slots(files.size());
  qhk::CertOptions opts;
  opts.max_length = req.max_length;
  opts.deep = req.deep;

  auto work = [&](std::size_t i) {
    Slot& s = slots[i];
    try {
      std::ifstream in(files[i]);
      std::stringstream buf;
      buf << in.rdbuf();
      const AlgebraFile file = parse_algebra_spec(buf.str());
      require(file.poset.has_value(), ErrorKind::InvalidArgument, "corpus files must carry a poset");
      s.entry = algebra_header(*file.algebra);
      s.entry["file"] = files[i].filename().string();
      const auto audit = qhk::implication_audit(file.algebra, *file.poset, opts);
      s.entry["audit"] = audit_json(audit);
      s.violated = !audit.ok();
    } catch (const Error& e) {
      s.error = files[i].filename().string() + ": " + e.what();
    }
  };

  const std::size_t workers = std::max<std::size_t>(1, std::min(req.threads, files.size()));
  std::mutex m;
  std::size_t next = 0;
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < workers; ++t)
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i;
        {
          std::lock_guard lock(m);
          if (next == files.size()) return;
          i = next++;
        }
        work(i);
      }
    });
  for (auto& t : pool) t.join();

  ojson doc;
  doc["seed"] = req.seed;
  ojson entries = ojson::array();
  std::size_t violations = 0;
  std::string errors;
  for (const auto& s : slots) {
    if (!s.error.empty()) {
      errors += s.error + "\n";
      continue;
    }
    entries.push_back(s.entry);
    violations += s.violated ? 1 : 0;
  }
  doc["algebras"] = entries;
  doc["violating_algebras"] = violations;
  if (!errors.empty()) return {kInputError, dump(doc), errors};
  return {violations ? kFail : kPass, dump(doc), ""};
}

}  // namespace gradecert::shell
