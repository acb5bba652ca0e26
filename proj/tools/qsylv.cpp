#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "quatsylv/cli.hpp"

namespace qc = quatsylv::cli;

namespace {

void apply_dims(quatsylv::GenSpec& s, const std::vector<int>& dims, bool eta) {
  if (dims.empty()) return;
  for (int d : dims)
    if (d < 0) throw quatsylv::ParseError("--dims entries must be nonnegative");
  if (dims.size() == 1) {
    s.p = s.q = s.a = s.b = s.c = s.d = s.e = s.f = s.m = s.n = dims[0];
    return;
  }
  if (eta) {
    if (dims.size() != 5)
      throw quatsylv::ParseError(
          "eta generation takes --dims with 1 or 5 entries: p a c e m");
    s.p = dims[0];
    s.a = dims[1];
    s.c = dims[2];
    s.e = dims[3];
    s.m = dims[4];
    return;
  }
  if (dims.size() != 10)
    throw quatsylv::ParseError(
        "--dims takes 1 or 10 entries: p q a b c d e f m n");
  s.p = dims[0];
  s.q = dims[1];
  s.a = dims[2];
  s.b = dims[3];
  s.c = dims[4];
  s.d = dims[5];
  s.e = dims[6];
  s.f = dims[7];
  s.m = dims[8];
  s.n = dims[9];
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dense quaternion Sylvester-type equation toolkit"};
  app.require_subcommand(1);

  std::string input, output, solution;
  std::string params = "zero", branch = "f1", eta = "i", gkind = "consistent";
  std::uint64_t seed = 0;
  double tol = -1.0;
  double scale = 1.0;
  int rank_deficit = 0;
  std::vector<int> dims;

  CLI::App* check = app.add_subcommand("check", "decide solvability");
  check->add_option("--input", input, "problem file")->required();
  check->add_option("--tol", tol, "tolerance override");

  CLI::App* solve = app.add_subcommand("solve", "construct a solution");
  solve->add_option("--input", input, "problem file")->required();
  solve->add_option("--output", output, "solution file to write")->required();
  solve->add_option("--params", params, "free parameters: zero or random");
  solve->add_option("--seed", seed, "seed for random parameters");
  solve->add_option("--branch", branch, "solution branch: f1 or f2");
  solve->add_option("--tol", tol, "tolerance override");

  CLI::App* verify = app.add_subcommand("verify", "recheck a stored solution");
  verify->add_option("--input", input, "problem file")->required();
  verify->add_option("--solution", solution, "solution file")->required();
  verify->add_option("--tol", tol, "tolerance override");

  CLI::App* gen = app.add_subcommand("gen", "generate a problem file");
  gen->add_option("--kind", gkind, "consistent, inconsistent or eta");
  gen->add_option("--output", output, "problem file to write")->required();
  gen->add_option("--seed", seed, "generation seed");
  gen->add_option("--dims", dims,
                  "1 shared size, 10 sizes p q a b c d e f m n, or 5 sizes "
                  "p a c e m for eta");
  gen->add_option("--scale", scale, "entry scale");
  gen->add_option("--rank-deficit", rank_deficit,
                  "rank drop below full for every coefficient");
  gen->add_option("--eta", eta, "axis for eta generation: i, j or k");

  CLI::App* eta_solve =
      app.add_subcommand("eta-solve", "solve an eta-Hermitian problem");
  eta_solve->add_option("--input", input, "problem file of kind eta")
      ->required();
  eta_solve->add_option("--output", output, "solution file to write")
      ->required();
  eta_solve->add_option("--params", params, "free parameters: zero or random");
  eta_solve->add_option("--seed", seed, "seed for random parameters");
  eta_solve->add_option("--branch", branch, "solution branch: f1 or f2");
  eta_solve->add_option("--tol", tol, "tolerance override");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : qc::kExitUsage;
  }

  try {
    if (*check) return qc::run_check(qc::parse_problem(input), std::cout, tol);
    if (*solve)
      return qc::run_solve(qc::parse_problem(input), params, seed,
                           qc::parse_branch(branch), output, std::cout, tol);
    if (*verify)
      return qc::run_verify(qc::parse_problem(input), solution, std::cout,
                            tol);
    if (*eta_solve) {
      qc::ProblemFile p = qc::parse_problem(input);
      if (p.kind != "eta")
        throw quatsylv::ValidationError(
            "eta-solve requires a problem of kind eta, got " + p.kind);
      return qc::run_solve(p, params, seed, qc::parse_branch(branch), output,
                           std::cout, tol);
    }
    qc::GenOptions opt;
    opt.kind = gkind;
    opt.output = output;
    opt.spec.seed = seed;
    opt.spec.entry_scale = scale;
    opt.spec.rank_deficit = rank_deficit;
    opt.spec.eta = qc::parse_eta(eta);
    apply_dims(opt.spec, dims, gkind == "eta");
    return qc::run_gen(opt, std::cout);
  } catch (const quatsylv::NotEtaHermitian& e) {
    std::cerr << "error: " << e.what() << "\n";
    return qc::kExitInconsistent;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return qc::kExitUsage;
  }
}
