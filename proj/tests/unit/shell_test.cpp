#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gradecert/forcegr/forcegr.hpp"
#include "gradecert/shell/commands.hpp"
#include "gradecert/shell/spec_io.hpp"
#include "support/fixtures.hpp"

using namespace gradecert;
using namespace gradecert::shell;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "cannot read " << p);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::filesystem::path formats(const std::string& name) { return std::filesystem::path(GRADECERT_FORMATS_DIR) / name; }

std::vector<std::filesystem::path> corpus_files() {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(GRADECERT_CORPUS_DIR))
    if (e.path().extension() == ".json") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::Internal;
}

std::string error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

bool same_structure(const alg::GradedAlgebra& a, const alg::GradedAlgebra& b) {
  if (a.dim() != b.dim() || a.field() != b.field() || a.grades() != b.grades() || a.unit() != b.unit()) return false;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (a.product(i, j) != b.product(i, j)) return false;
  return true;
}

CertifyRequest certify(const std::string& text, std::vector<std::string> checks) {
  CertifyRequest r;
  r.algebra_text = text;
  r.checks = std::move(checks);
  return r;
}

}  // namespace

TEST_CASE("algebra spec parsing") {
  const auto file = parse_algebra_spec(slurp(formats("a2_path.quiver.json")));
  CHECK(file.algebra->dim() == 3);
  REQUIRE(file.poset);
  CHECK(file.poset->less(1, 0));

  SUBCASE("structure constants and quiver forms agree") {
    const auto canon = parse_algebra_spec(slurp(formats("a2_path.canonical.json")));
    CHECK(same_structure(*canon.algebra, *file.algebra));
    CHECK(canon.poset == file.poset);
  }
  SUBCASE("diagnostics name the line or the field") {
    CHECK(error_of([] { parse_algebra_spec("{\"field\": \"Q\",\n \"dim\": }"); }).find("line 2") != std::string::npos);
    const std::string bad_index = R"({"field": "Q", "dim": 1, "labels": ["1"], "grades": [0], "unit": ["1"],
                                     "mult": [[0, 0, 0, "1"], [0, 3, 0, "1"]]})";
    CHECK(error_of([&] { parse_algebra_spec(bad_index); }).find("/mult/1/1") != std::string::npos);
    const std::string bad_scalar = R"({"field": "Q", "dim": 1, "labels": ["1"], "grades": [0], "unit": ["one"],
                                      "mult": [[0, 0, 0, "1"]]})";
    CHECK(error_of([&] { parse_algebra_spec(bad_scalar); }).find("/unit/0") != std::string::npos);
    CHECK(error_of([] { parse_algebra_spec(R"({"dim": 1})"); }).find("/field") != std::string::npos);
    CHECK(kind_of([] { parse_algebra_spec(R"({"field": "Fp:4", "dim": 0})"); }) == ErrorKind::Parse);
  }
  SUBCASE("validation errors keep their kind") {
    // x * x = x with x in grade 1
    const std::string spec = R"({"field": "Q", "dim": 2, "labels": ["1", "x"], "grades": [0, 1], "unit": ["1", "0"],
                                "mult": [[0, 0, 0, "1"], [0, 1, 1, "1"], [1, 0, 1, "1"], [1, 1, 1, "1"]]})";
    CHECK(kind_of([&] { parse_algebra_spec(spec); }) == ErrorKind::GradingViolation);
  }
  SUBCASE("poset size must match the idempotents") {
    std::string text = slurp(formats("a2_path.quiver.json"));
    text.replace(text.find("\"size\": 2"), 9, "\"size\": 3");
    CHECK(error_of([&] { parse_algebra_spec(text); }).find("/poset/size") != std::string::npos);
  }
}

TEST_CASE("canonical form round-trips") {
  for (const auto& path : corpus_files()) {
    CAPTURE(path.filename().string());
    const auto file = parse_algebra_spec(slurp(path));
    const std::string canon = emit_algebra_spec(*file.algebra, file.poset);
    const auto again = parse_algebra_spec(canon);
    CHECK(same_structure(*again.algebra, *file.algebra));
    CHECK(again.poset == file.poset);
    CHECK(emit_algebra_spec(*again.algebra, again.poset) == canon);
    // the radical survives, so F_p algebras with small p still certify
    CHECK(again.algebra->radical().rows() == file.algebra->radical().rows());
  }
  const std::string golden = slurp(formats("a2_path.canonical.json"));
  const auto g = parse_algebra_spec(golden);
  CHECK(emit_algebra_spec(*g.algebra, g.poset) == golden);
}

TEST_CASE("order spec round-trips") {
  for (const char* name : {"z_x2.order.json", "z_x2_minus_5.order.json"}) {
    const auto o = parse_order_spec(slurp(formats(name)));
    CHECK(o.prime == 5);
    CHECK(emit_order_spec(parse_order_spec(emit_order_spec(o))) == emit_order_spec(o));
  }
  CHECK(kind_of([] { parse_order_spec(R"({"field": "Q"})"); }) == ErrorKind::Parse);
}

TEST_CASE("certify examples") {
  SUBCASE("trivially graded quasi-hereditary spec passes standard Q-Koszul") {
    const auto r = cmd_certify(certify(slurp(std::filesystem::path(GRADECERT_CORPUS_DIR) / "04_a3_path_trivial.json"),
                                       {"standard_q_koszul"}));
    CHECK(r.exit_code == kPass);
    CHECK(r.out.find("\"verdict\": \"pass\"") != std::string::npos);
  }
  SUBCASE("k[x]/(x^3) is not Koszul, with a witness") {
    const auto r = cmd_certify(certify(slurp(std::filesystem::path(GRADECERT_CORPUS_DIR) / "10_truncated_cubic.json"),
                                       {"koszul"}));
    CHECK(r.exit_code == kFail);
    CHECK(r.out == slurp(formats("truncated_cubic.koszul.report.json")));
    CHECK(r.out.find("\"shift\": 3") != std::string::npos);
  }
  SUBCASE("malformed JSON is an input error") {
    const auto r = cmd_certify(certify("{\"field\": ", {}));
    CHECK(r.exit_code == kInputError);
    CHECK(r.err.find("Parse") != std::string::npos);
  }
  SUBCASE("unknown check and missing poset are input errors") {
    const std::string cubic = slurp(std::filesystem::path(GRADECERT_CORPUS_DIR) / "10_truncated_cubic.json");
    CHECK(cmd_certify(certify(cubic, {"balanced"})).exit_code == kInputError);
    auto semi = emit_algebra_spec(*fixtures::semisimple(2));
    CHECK(cmd_certify(certify(semi, {"q_koszul"})).exit_code == kInputError);
    // without a poset the default checks avoid it
    CHECK(cmd_certify(certify(semi, {})).exit_code == kPass);
  }
  SUBCASE("the poset file overrides the embedded one") {
    auto req = certify(slurp(std::filesystem::path(GRADECERT_CORPUS_DIR) / "12_cycle2_ba.json"), {"quasi_hereditary"});
    CHECK(cmd_certify(req).exit_code == kPass);
    req.poset_text = R"({"size": 2, "relations": [[0, 1]]})";
    CHECK(cmd_certify(req).exit_code == kFail);
  }
  SUBCASE("definitions that need quasi-heredity fail without it") {
    const auto r = cmd_certify(certify(slurp(std::filesystem::path(GRADECERT_CORPUS_DIR) / "09_dual_numbers.json"),
                                       {"standard_q_koszul", "koszul"}));
    CHECK(r.exit_code == kFail);
    CHECK(r.out.find("NotQuasiHereditary") != std::string::npos);
  }
  SUBCASE("golden report") {
    const auto r = cmd_certify(certify(slurp(formats("a2_path.quiver.json")), {"standard_q_koszul", "koszul"}));
    CHECK(r.exit_code == kPass);
    CHECK(r.out == slurp(formats("a2_path.report.json")));
  }
  SUBCASE("q_koszul:<n>") {
    const std::string cubic = slurp(std::filesystem::path(GRADECERT_CORPUS_DIR) / "10_truncated_cubic.json");
    CHECK(cmd_certify(certify(cubic, {"q_koszul:1"})).exit_code == kPass);
    CHECK(cmd_certify(certify(cubic, {"q_koszul:2"})).exit_code == kFail);
    CHECK(cmd_certify(certify(cubic, {"q_koszul:x"})).exit_code == kInputError);
  }
}

TEST_CASE("gr examples") {
  SUBCASE("integral forced gradings") {
    auto run = [](const char* name) { return cmd_gr({slurp(formats(name)), "tildegr"}); };
    const auto plain = run("z_x2.order.json");
    const auto ramified = run("z_x2_minus_5.order.json");
    REQUIRE(plain.exit_code == kPass);
    REQUIRE(ramified.exit_code == kPass);
    CHECK(plain.out == slurp(formats("z_x2.tildegr.json")));
    CHECK(ramified.out == slurp(formats("z_x2_minus_5.tildegr.json")));
    CHECK(parse_algebra_spec(plain.out).algebra->grades() == std::vector<int>{0, 1});
    CHECK(parse_algebra_spec(ramified.out).algebra->grades() == std::vector<int>{0, 0});
  }
  SUBCASE("semisimple input is returned in grade 0") {
    const auto in = fixtures::semisimple(3);
    const auto r = cmd_gr({emit_algebra_spec(*in), "gr"});
    REQUIRE(r.exit_code == kPass);
    CHECK(same_structure(*parse_algebra_spec(r.out).algebra, *in));
  }
  SUBCASE("golden gr output") {
    const auto r = cmd_gr({slurp(std::filesystem::path(GRADECERT_CORPUS_DIR) / "10_truncated_cubic.json"), "gr"});
    CHECK(r.out == slurp(formats("truncated_cubic.gr.json")));
  }
  SUBCASE("output re-validates and feeds certify") {
    for (const auto& path : corpus_files()) {
      CAPTURE(path.filename().string());
      const auto r = cmd_gr({slurp(path), "gr"});
      REQUIRE(r.exit_code == kPass);
      const auto file = parse_algebra_spec(r.out);
      CHECK(file.poset == parse_algebra_spec(slurp(path)).poset);
      CHECK(cmd_certify(certify(r.out, {"tight"})).exit_code == kPass);  // gr A is generated in grade 1
    }
  }
  SUBCASE("errors") {
    CHECK(cmd_gr({"{}", "gr"}).exit_code == kInputError);
    CHECK(cmd_gr({slurp(formats("z_x2.order.json")), "gr"}).exit_code == kInputError);
    CHECK(cmd_gr({slurp(formats("z_x2.order.json")), "bogus"}).exit_code == kInputError);
    // F_2 with dim 2 and no radical basis
    const std::string f2 = R"({"field": "Fp:2", "dim": 2, "labels": ["1", "x"], "grades": [0, 0], "unit": ["1", "0"],
                              "mult": [[0, 0, 0, "1"], [0, 1, 1, "1"], [1, 0, 1, "1"]]})";
    const auto r = cmd_gr({f2, "gr"});
    CHECK(r.exit_code == kInputError);
    CHECK(r.err.find("RadicalUnavailable") != std::string::npos);
    CHECK(r.err.find("radical_basis") != std::string::npos);
  }
}

TEST_CASE("coxeter examples") {
  auto run = [](CoxeterRequest r) { return cmd_coxeter(r); };
  SUBCASE("dcosets") {
    CoxeterRequest r;
    r.sub = "dcosets";
    r.type = "A2";
    r.j1 = "s1";
    r.j2 = "s2";
    const auto out = run(r);
    CHECK(out.exit_code == kPass);
    CHECK(out.out == slurp(formats("dcosets_A2_s1_s2.csv")));
    CHECK(std::count(out.out.begin(), out.out.end(), '\n') == 3);
    CHECK(out.out.find(",yes") != std::string::npos);
    CHECK(out.out.find(",no") != std::string::npos);
  }
  SUBCASE("psi") {
    CoxeterRequest r;
    r.sub = "psi";
    r.type = "A2";
    r.mu = "s1";
    r.nu = "s2";
    r.x = "s2.s1";
    CHECK(run(r).out == "e\n");
  }
  SUBCASE("weights") {
    CoxeterRequest r;
    r.sub = "weights";
    r.type = "A1";
    r.p = 5;
    r.jantzen = "24";
    CHECK(run(r).out == "true\n");
    r.jantzen = "25";
    CHECK(run(r).out == "false\n");
    r.jantzen.reset();
    r.ell = true;
    CHECK(run(r).out == "5\n");
    r.ell = false;
    CHECK(run(r).exit_code == kInputError);
    r.p = 4;
    r.ell = true;
    CHECK(run(r).exit_code == kInputError);
    CoxeterRequest h;
    h.sub = "weights";
    h.type = "G2";
    h.coxeter_number = true;
    CHECK(run(h).out == "6\n");
    h.ell = true;
    CHECK(run(h).exit_code == kInputError);
  }
  SUBCASE("golden listings") {
    CoxeterRequest kl;
    kl.sub = "kl";
    kl.type = "A3";
    CHECK(run(kl).out == slurp(formats("kl_A3.csv")));
    CoxeterRequest ball;
    ball.sub = "ball";
    ball.type = "~A2";
    ball.radius = 3;
    CHECK(run(ball).out == slurp(formats("ball_affA2_r3.txt")));
    CoxeterRequest p;
    p.sub = "posets";
    p.type = "~A1";
    p.radius = 8;
    p.mu = "s1";
    CHECK(run(p).out == slurp(formats("posets_affA1_minus_r8.txt")));
    p.sign = "plus";
    CHECK(run(p).out == slurp(formats("posets_affA1_plus_r8.txt")));
  }
  SUBCASE("kl single polynomial") {
    CoxeterRequest r;
    r.sub = "kl";
    r.type = "A3";
    r.x = "s2";
    r.w = "s2s1s3s2";
    CHECK(run(r).out == "1 + q\n");
    r.w = "s1s2s3s1s2s1s3";  // words need not be reduced
    CHECK(run(r).exit_code == kPass);
  }
  SUBCASE("uncertified sets exit 2 with a hint") {
    CoxeterRequest r;
    r.sub = "posets";
    r.type = "A2";
    r.radius = 2;
    r.w = "e";
    r.coideal = true;
    auto out = run(r);
    CHECK(out.exit_code == kInconclusive);
    CHECK(out.err.find("--radius 3") != std::string::npos);
    r.radius = 3;
    out = run(r);
    CHECK(out.exit_code == kPass);
    CHECK(out.out.find("# 6 elements") == 0);
    r.type = "~A1";
    r.radius = 5;
    out = run(r);
    CHECK(out.exit_code == kInconclusive);
    CHECK(out.err.find("infinite") != std::string::npos);
  }
  SUBCASE("input errors") {
    CoxeterRequest r;
    r.sub = "ball";
    r.type = "~A2";
    CHECK(run(r).exit_code == kInputError);  // affine needs a radius
    r.type = "Q7";
    CHECK(run(r).exit_code == kInputError);
    r.type = "A2";
    r.sub = "psi";
    r.x = "s3";
    CHECK(run(r).exit_code == kInputError);
  }
}

TEST_CASE("corpus runner") {
  CorpusRequest req;
  req.dir = GRADECERT_CORPUS_DIR;
  const auto one = cmd_corpus(req);
  CHECK(one.exit_code == kPass);
  req.threads = 4;
  const auto four = cmd_corpus(req);
  CHECK(four.out == one.out);
  CHECK(four.exit_code == one.exit_code);
  CHECK(one.out.find("\"violating_algebras\": 0") != std::string::npos);

  req.dir = "/nonexistent/dir";
  CHECK(cmd_corpus(req).exit_code == kInputError);
}
