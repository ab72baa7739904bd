#include "cli.hpp"

#include <filesystem>
#include <ostream>

#include <CLI11.hpp>

#include "wsr/checker.hpp"
#include "wsr/mutation.hpp"
#include "wsr/phpgen.hpp"
#include "wsr/proofio.hpp"

namespace wsr::cli {

namespace {

struct CheckArgs {
  std::string cnf, proof;
  bool backward = false;
  std::string strategy = "wsr";
  std::string mode = "wsr";
  bool stats = false;
  unsigned jobs = 1;
  bool assume_dsr = false;
  bool no_fast_path = false;
};

void add_check_flags(CLI::App *cmd, CheckArgs &a, bool with_backward) {
  cmd->add_option("cnf", a.cnf, "DIMACS formula")->required();
  cmd->add_option("proof", a.proof, "proof file")->required();
  if (with_backward)
    cmd->add_flag("--backward", a.backward, "check backwards with marking");
  cmd->add_option("--strategy", a.strategy, "backward marking strategy")
      ->check(CLI::IsMember({"wsr", "sr-fixpoint"}));
  cmd->add_option("--mode", a.mode, "redundancy notion")->check(CLI::IsMember({"wsr", "sr", "pr", "rat", "rup"}));
  cmd->add_flag("--stats", a.stats, "print statistics");
  cmd->add_option("--jobs", a.jobs, "worker threads for per-clause checks")->check(CLI::PositiveNumber);
  cmd->add_flag("--assume-dsr", a.assume_dsr, "read DPR-style lines (witness after the repeated first literal)");
  cmd->add_flag("--no-fast-path", a.no_fast_path, "check identity witnesses clause by clause");
}

CheckOptions options_from(const CheckArgs &a) {
  CheckOptions opt;
  opt.mode = *parse_mode(a.mode);
  opt.strategy = *parse_strategy(a.strategy);
  opt.jobs = a.jobs;
  opt.identity_fast_path = !a.no_fast_path;
  return opt;
}

Proof load_proof(const std::string &path, bool dsr) {
  auto text = read_file(path);
  return dsr ? parse_dpr_proof(text) : parse_wsr_proof(text);
}

void report_warnings(const std::vector<Warning> &warnings, std::ostream &out) {
  for (const auto &w : warnings)
    out << "c warning: instruction " << w.instruction + 1 << ": " << w.message << "\n";
}

void report_rejection(const std::optional<Rejected> &rej, std::ostream &out) {
  if (!rej)
    return;
  out << "c rejected at instruction " << rej->instruction + 1 << ": " << rej->reason << "\n";
  if (rej->target)
    out << "c clause not RUP: " << to_string(*rej->target) << "\n";
}

void report_stats(const CheckStats &stats, std::ostream &out) { out << format_stats(stats); }

int verdict(bool ok, std::ostream &out) {
  out << (ok ? "s VERIFIED" : "s NOT VERIFIED") << "\n";
  return ok ? kVerified : kNotVerified;
}

int do_check(const CheckArgs &a, std::ostream &out) {
  auto f = parse_dimacs(read_file(a.cnf));
  auto proof = load_proof(a.proof, a.assume_dsr);
  auto opt = options_from(a);
  if (a.backward) {
    auto r = check_backward(f.formula, proof, opt);
    report_warnings(r.warnings, out);
    report_rejection(r.rejection, out);
    if (r.accepted)
      out << "c core " << r.core.size() << " of " << f.formula.size() << " clauses, trimmed proof "
          << r.trimmed.size() << " instructions\n";
    int code = verdict(r.accepted, out);
    if (a.stats)
      report_stats(r.stats, out);
    return code;
  }
  auto r = check_forward(f.formula, proof, opt);
  report_warnings(r.warnings, out);
  report_rejection(r.rejection, out);
  if (r.accepted)
    out << (r.refutation ? "c refutation\n" : "c no empty clause derived\n");
  int code = verdict(r.accepted, out);
  if (a.stats)
    report_stats(r.stats, out);
  return code;
}

int do_trim(const CheckArgs &a, const std::string &proof_out, const std::string &core_out, std::ostream &out) {
  auto f = parse_dimacs(read_file(a.cnf));
  auto proof = load_proof(a.proof, a.assume_dsr);
  auto r = check_backward(f.formula, proof, options_from(a));
  report_warnings(r.warnings, out);
  report_rejection(r.rejection, out);
  if (r.accepted) {
    if (!proof_out.empty())
      write_file(proof_out, serialize_trimmed(r.trimmed));
    if (!core_out.empty())
      write_file(core_out, serialize_core(r.core, f.num_vars));
    out << "c core " << r.core.size() << " of " << f.formula.size() << " clauses, trimmed proof "
        << r.trimmed.size() << " instructions\n";
  }
  int code = verdict(r.accepted, out);
  if (a.stats)
    report_stats(r.stats, out);
  return code;
}

int do_gen_php(unsigned n, const std::string &kind, const std::string &dir, std::ostream &out) {
  std::filesystem::create_directories(dir);
  PhpIndex ix(n);
  Proof proof = kind == "pr" ? php_pr_proof(n) : php_wsr_proof(n);
  auto base = std::filesystem::path(dir) / ("php" + std::to_string(n));
  std::string cnf = base.string() + ".cnf";
  std::string prf = base.string() + "." + kind;
  write_file(cnf, serialize_dimacs(php_formula(n), ix.num_vars()));
  write_file(prf, serialize_proof(proof));
  out << "c formula " << cnf << "\n"
      << "c proof " << prf << "\n"
      << "instructions " << proof.size() << "\n"
      << "introductions " << count_introductions(proof) << "\n";
  return kVerified;
}

int do_translate(const CheckArgs &a, const std::string &mut_out, std::ostream &out) {
  auto f = parse_dimacs(read_file(a.cnf));
  auto proof = load_proof(a.proof, a.assume_dsr);
  CheckOptions opt = options_from(a);
  opt.mode = Mode::Wsr;
  opt.retain_certificates = true;
  auto r = check_forward(f.formula, proof, opt);
  report_warnings(r.warnings, out);
  report_rejection(r.rejection, out);
  if (!r.accepted)
    return verdict(false, out);
  auto mp = translate_proof(f.formula, proof, r);
  write_file(mut_out, serialize_mutation_proof(mp));
  out << "c mutation proof with " << mp.steps.size() << " steps\n";
  return verdict(true, out);
}

int do_verify_mut(const std::string &cnf, const std::string &mut, std::ostream &out) {
  auto f = parse_dimacs(read_file(cnf));
  auto mp = parse_mutation_proof(read_file(mut));
  auto v = verify_proof(mp, f.formula);
  if (!v.ok()) {
    out << "c step " << (v.failed_step ? std::to_string(*v.failed_step) : std::string("?")) << ": " << v.message
        << "\n";
    return verdict(false, out);
  }
  out << "c conclusion " << to_string(*v.conclusion) << "\n";
  if (v.conclusion->prefix.empty() && v.conclusion->clause.empty())
    out << "c refutation\n";
  return verdict(true, out);
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"WSR proof toolkit"};
  app.require_subcommand(1);

  CheckArgs check_args;
  auto *check = app.add_subcommand("check", "check a proof forward (default) or backward");
  add_check_flags(check, check_args, true);

  CheckArgs trim_args;
  std::string trim_out, trim_core;
  auto *trim = app.add_subcommand("trim", "backward check, emitting a trimmed proof");
  add_check_flags(trim, trim_args, false);
  trim->add_option("-o,--output", trim_out, "trimmed proof output")->required();
  trim->add_option("--core", trim_core, "core output (DIMACS)");

  CheckArgs core_args;
  std::string core_out;
  auto *core = app.add_subcommand("core", "backward check, emitting the unsatisfiable core");
  add_check_flags(core, core_args, false);
  core->add_option("-o,--output", core_out, "core output (DIMACS)")->required();

  unsigned php_n = 0;
  std::string php_kind = "wsr", php_dir;
  auto *gen = app.add_subcommand("gen-php", "generate a pigeonhole formula and its proof");
  gen->add_option("n", php_n, "number of pigeons")->required()->check(CLI::Range(1u, 1000u));
  gen->add_option("--proof", php_kind, "proof kind")->check(CLI::IsMember({"wsr", "pr"}));
  gen->add_option("-o,--output", php_dir, "output directory")->required();

  CheckArgs tr_args;
  std::string tr_out;
  auto *tr = app.add_subcommand("translate", "translate an accepted proof into mutation logic");
  add_check_flags(tr, tr_args, false);
  tr->add_option("-o,--output", tr_out, "mutation proof output")->required();

  std::string vm_cnf, vm_proof;
  auto *vm = app.add_subcommand("verify-mut", "verify a mutation proof");
  vm->add_option("cnf", vm_cnf, "DIMACS formula")->required();
  vm->add_option("mutproof", vm_proof, "mutation proof")->required();

  std::vector<const char *> argv;
  for (const auto &a : args)
    argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kVerified : kInputError;
  }

  try {
    if (*check)
      return do_check(check_args, out);
    if (*trim)
      return do_trim(trim_args, trim_out, trim_core, out);
    if (*core)
      return do_trim(core_args, "", core_out, out);
    if (*gen)
      return do_gen_php(php_n, php_kind, php_dir, out);
    if (*tr)
      return do_translate(tr_args, tr_out, out);
    if (*vm)
      return do_verify_mut(vm_cnf, vm_proof, out);
  } catch (const ParseError &e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

} // namespace wsr::cli
