// Command-line front end: build arrangements over geometric lattices, verify
// their defining conditions, and run the discrete-Morse and homology tools.
//
// Exit codes: 0 success / all checks pass, 1 verification failure, 2 input
// error, 3 internal invariant violation.  Errors are reported as JSON on
// stderr.

#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "msl/commands.hpp"

namespace {

void emit_error(const std::string& type, const std::string& message) {
  std::cerr << msl::json{{"error", {{"type", type}, {"message", message}}}}.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"matroid arrangements: build, verify, and analyze"};
  app.require_subcommand(1);

  msl::CliOptions opt;
  std::string morse_mode;

  auto add_matroid = [&](CLI::App* c) {
    c->add_option("--matroid", opt.matroid,
                  "matroid: builtin:fano | boolean:N | uniform:R,N | gfp:P:cols | file:PATH");
  };
  auto add_space = [&](CLI::App* c) {
    c->add_option("--space", opt.space, "model space: points:K | cycle:K | sphere:D | file:PATH");
  };
  auto add_ell = [&](CLI::App* c) {
    c->add_option("--ell", opt.ell, "label map: default | flag:[[],[..],..] (default: default)");
  };
  auto add_field = [&](CLI::App* c) {
    c->add_option("--field", opt.field, "coefficient field: Q | GF2 | both (default: MSL_FIELD or Q)");
  };

  CLI::App* build = app.add_subcommand("build", "construct an arrangement and emit its cells");
  add_matroid(build);
  add_space(build);
  add_ell(build);
  build->add_option("--output", opt.output, "write the arrangement JSON to this file");

  CLI::App* verify = app.add_subcommand("verify", "run the full verification suite");
  add_matroid(verify);
  add_space(verify);
  add_ell(verify);
  add_field(verify);
  verify->add_option("--input", opt.input, "verify a previously built arrangement file");

  CLI::App* morse = app.add_subcommand("morse", "discrete Morse matchings and hypothesis checks");
  morse->add_option("mode", morse_mode, "joinup | hypotheses")->required();
  add_matroid(morse);
  add_space(morse);
  add_ell(morse);
  morse->add_option("--copies", opt.copies, "number of join factors (joinup mode)");
  morse->add_option("--basepoints", opt.basepoints,
                    "comma-separated basepoint vertex labels, one per copy (joinup mode)");

  CLI::App* betti = app.add_subcommand("betti", "reduced Betti numbers of a model-space power");
  add_space(betti);
  add_field(betti);
  betti->add_option("--copies", opt.copies, "join power (default 1)");

  CLI::App* predict = app.add_subcommand("predict", "closed-form homology of the arrangement union");
  add_matroid(predict);
  add_space(predict);
  add_field(predict);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    emit_error("input", e.what());
    return 2;
  }

  try {
    if (build->parsed()) return msl::cmd_build(opt, std::cout);
    if (verify->parsed()) return msl::cmd_verify(opt, std::cout);
    if (betti->parsed()) return msl::cmd_betti(opt, std::cout);
    if (predict->parsed()) return msl::cmd_predict(opt, std::cout);
    if (morse->parsed()) {
      if (morse_mode == "joinup") return msl::cmd_morse_joinup(opt, std::cout);
      if (morse_mode == "hypotheses") return msl::cmd_morse_hypotheses(opt, std::cout);
      throw msl::input_error("morse: unknown mode '" + morse_mode + "' (want joinup or hypotheses)");
    }
    emit_error("input", "no subcommand given");
    return 2;
  } catch (const msl::input_error& e) {
    emit_error("input", e.what());
    return 2;
  } catch (const msl::internal_error& e) {
    emit_error("internal", e.what());
    return 3;
  } catch (const std::exception& e) {
    emit_error("internal", e.what());
    return 3;
  }
}
