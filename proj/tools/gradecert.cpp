// gradecert: command-line front end. All work happens in gradecert::shell; this file only parses flags,
// reads input files and writes outputs.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "gradecert/shell/commands.hpp"

namespace {

using namespace gradecert::shell;

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::stringstream buf;
  buf << in.rdbuf();
  out = buf.str();
  return true;
}

int emit(const CommandResult& r, const std::string& out_path) {
  if (!r.err.empty()) std::cerr << r.err;
  if (out_path.empty()) {
    std::cout << r.out;
  } else if (!r.out.empty()) {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) {
      std::cerr << "cannot write " << out_path << "\n";
      return kInputError;
    }
    f << r.out;
  }
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact certification of graded algebra properties and Coxeter combinatorics"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string out_path;
  std::uint64_t seed = 0;
  app.add_option("--out", out_path, "Write the main output here instead of stdout");
  app.add_option("--seed", seed, "Seed for randomized searches")->capture_default_str();

  // certify
  auto* certify = app.add_subcommand("certify", "Run certifiers on an algebra spec and print a JSON report");
  std::string algebra_path, poset_path;
  std::vector<std::string> checks;
  CertifyRequest creq;
  certify->add_option("algebra", algebra_path, "Algebra spec (JSON)")->required();
  certify->add_option("--poset", poset_path, "Weight poset (JSON), overriding the one in the spec");
  certify->add_option("--checks", checks,
                      "koszul, standard_koszul, q_koszul, q_koszul:<n>, standard_q_koszul, tight, quadratic, "
                      "quasi_hereditary, audit (default)")
      ->delimiter(',');
  certify->add_flag("--deep", creq.deep, "Also walk a heredity chain when testing quasi-heredity");
  certify->add_option("--max-length", creq.max_length, "Resolution terms per module before giving up")
      ->capture_default_str();

  // gr
  auto* gr = app.add_subcommand("gr", "Forced grading of an algebra (gr) or an integral order (tildegr)");
  std::string gr_path;
  GrRequest greq;
  gr->add_option("input", gr_path, "Algebra spec, or order spec for tildegr")->required();
  gr->add_option("--mode", greq.mode, "gr, tildegr, or canonical (rewrite the input spec in canonical form)")
      ->check(CLI::IsMember({"gr", "tildegr", "canonical"}))->capture_default_str();

  // coxeter
  auto* cox = app.add_subcommand("coxeter", "Weyl group combinatorics");
  CoxeterRequest xreq;
  std::size_t radius = 0;
  long long p = 0, bound = 0;
  std::string x, w, jantzen, regular, restricted, dominant;
  cox->add_option("subcommand", xreq.sub, "ball, dcosets, psi, posets, kl, weights")
      ->required()
      ->check(CLI::IsMember({"ball", "dcosets", "psi", "posets", "kl", "weights"}));
  cox->add_option("type", xreq.type, "A2, B3, G2, ~A2, ...")->required();
  auto* radius_opt = cox->add_option("--radius", radius, "Ball radius (default: the whole finite group)");
  cox->add_option("--J1", xreq.j1, "Left parabolic subset, e.g. s1,s2");
  cox->add_option("--J2", xreq.j2, "Right parabolic subset");
  cox->add_option("--mu", xreq.mu, "Subset mu");
  cox->add_option("--nu", xreq.nu, "Subset nu");
  auto* x_opt = cox->add_option("--x", x, "Element as a word, e.g. s2.s1");
  auto* w_opt = cox->add_option("--w", w, "Element as a word; for posets, print the ideal below it");
  cox->add_option("--sign", xreq.sign, "minus or plus")->check(CLI::IsMember({"minus", "plus"}));
  cox->add_flag("--coideal", xreq.coideal, "With --w, print the coideal above w");
  auto* p_opt = cox->add_option("--p", p, "Prime");
  auto* jantzen_opt = cox->add_option("--jantzen", jantzen, "Weight to test for the Jantzen region");
  auto* regular_opt = cox->add_option("--regular", regular, "Weight to test for p-regularity");
  auto* restricted_opt = cox->add_option("--restricted", restricted, "Weight to test for p-restrictedness");
  auto* dominant_opt = cox->add_option("--dominant", dominant, "Weight to test for dominance");
  cox->add_flag("--gamma", xreq.gamma, "List the p-regular weights below a restricted p-regular weight");
  auto* bound_opt = cox->add_option("--bound", bound, "Coordinate bound for --gamma");
  cox->add_flag("--ell", xreq.ell, "Print l(p)");
  cox->add_flag("--coxeter-number", xreq.coxeter_number, "Print the Coxeter number");

  // corpus
  auto* corpus = app.add_subcommand("corpus", "Implication audit over every algebra spec in a directory");
  CorpusRequest kreq;
  corpus->add_option("dir", kreq.dir, "Directory of algebra specs")->required();
  corpus->add_flag("--deep", kreq.deep, "Also walk heredity chains");
  corpus->add_option("--max-length", kreq.max_length, "Resolution terms per module")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  if (certify->parsed()) {
    if (!read_file(algebra_path, creq.algebra_text)) {
      std::cerr << "cannot read " << algebra_path << "\n";
      return kInputError;
    }
    if (!poset_path.empty()) {
      std::string text;
      if (!read_file(poset_path, text)) {
        std::cerr << "cannot read " << poset_path << "\n";
        return kInputError;
      }
      creq.poset_text = text;
    }
    creq.checks = checks;
    creq.seed = seed;
    return emit(cmd_certify(creq), out_path);
  }
  if (gr->parsed()) {
    if (!read_file(gr_path, greq.text)) {
      std::cerr << "cannot read " << gr_path << "\n";
      return kInputError;
    }
    return emit(cmd_gr(greq), out_path);
  }
  if (cox->parsed()) {
    if (*radius_opt) xreq.radius = radius;
    if (*x_opt) xreq.x = x;
    if (*w_opt) xreq.w = w;
    if (*p_opt) xreq.p = p;
    if (*jantzen_opt) xreq.jantzen = jantzen;
    if (*regular_opt) xreq.regular = regular;
    if (*restricted_opt) xreq.restricted = restricted;
    if (*dominant_opt) xreq.dominant = dominant;
    if (*bound_opt) xreq.bound = bound;
    return emit(cmd_coxeter(xreq), out_path);
  }
  kreq.seed = seed;
  kreq.threads = max_threads();
  return emit(cmd_corpus(kreq), out_path);
}
