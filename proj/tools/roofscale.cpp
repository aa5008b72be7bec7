// Command-line front end: invariant evaluation, convex roofs, rescaling
// workflows, curve/surface data files, state classification, and the
// property verification suite.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "roofscale/convexroof.hpp"
#include "roofscale/ghzw.hpp"
#include "roofscale/invariants.hpp"
#include "roofscale/json_io.hpp"
#include "roofscale/localops.hpp"
#include "roofscale/qstate.hpp"
#include "roofscale/verify.hpp"

namespace {

using namespace roofscale;

GhzwFamily resolve_family(const std::string& spec) {
  if (spec == "standard") return standard_family();
  if (spec == "s2sqrt2") return s2sqrt2_family();
  return parse_family_json(read_text_file(spec));
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::fputs(text.c_str(), stdout);
  } else {
    write_text_file(out_path, text);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polynomial entanglement monotones of three qubits: convex "
               "roofs, rescaling, and characteristic curves"};
  app.require_subcommand(1);

  std::string monotone_name = "tau3";
  std::string state_path;
  std::string family_spec = "standard";
  std::string out_path;
  double p = 0.0;
  double q = 0.0;
  double step = 1e-3;
  int restarts = RoofOptions{}.restarts;
  unsigned long long seed = RoofOptions{}.seed;
  std::string suite = "fast";

  const auto add_monotone = [&](CLI::App* cmd) {
    cmd->add_option("--monotone", monotone_name, "Monotone name")
        ->check(CLI::IsMember({"tau3", "sqrt_tau3"}));
  };
  const auto add_out = [&](CLI::App* cmd) {
    cmd->add_option("--out", out_path, "Output path (default: stdout)");
  };

  CLI::App* c_inv = app.add_subcommand(
      "invariant", "Evaluate a monotone on a pure state file");
  add_monotone(c_inv);
  c_inv->add_option("--state", state_path, "State JSON path")->required();
  add_out(c_inv);

  CLI::App* c_roof = app.add_subcommand(
      "roof", "Convex-roof value and optimal decomposition of a state");
  add_monotone(c_roof);
  c_roof->add_option("--state", state_path, "State JSON path")->required();
  c_roof->add_option("--restarts", restarts, "Optimizer restarts");
  c_roof->add_option("--seed", seed, "Optimizer seed");
  add_out(c_roof);

  CLI::App* c_rescale = app.add_subcommand(
      "rescale", "Trace factor, transported weight, and roof value of a "
                 "family mixture via the standard-form rescaling");
  c_rescale->add_option("--family", family_spec,
                        "standard, s2sqrt2, or a family JSON path");
  c_rescale->add_option("--p", p, "Mixture weight of the gGHZ branch")
      ->required();
  add_out(c_rescale);

  CLI::App* c_curve = app.add_subcommand(
      "curve", "Characteristic curve and its convexification as CSV");
  c_curve->add_option("--family", family_spec,
                      "standard, s2sqrt2, or a family JSON path");
  c_curve->add_option("--step", step, "Grid step in p");
  add_out(c_curve);

  CLI::App* c_surface = app.add_subcommand(
      "surface", "Rank-3 characteristic surface: full CSV grid, or a single "
                 "point when --p/--q are given");
  double surf_step = 1.0 / 200.0;
  c_surface->add_option("--step", surf_step, "Grid step in (p, q)");
  CLI::Option* opt_p = c_surface->add_option("--p", p, "Point query: p");
  CLI::Option* opt_q = c_surface->add_option("--q", q, "Point query: q");
  opt_p->needs(opt_q);
  opt_q->needs(opt_p);
  add_out(c_surface);

  CLI::App* c_classify = app.add_subcommand(
      "classify", "Zero / nonzero / undecided roof classification");
  add_monotone(c_classify);
  c_classify->add_option("--state", state_path, "State JSON path")->required();
  c_classify->add_option("--restarts", restarts, "Optimizer restarts");
  c_classify->add_option("--seed", seed, "Optimizer seed");
  add_out(c_classify);

  CLI::App* c_verify = app.add_subcommand(
      "verify", "Run the property suite and report PASS/FAIL per property");
  c_verify->add_option("suite", suite, "fast or full")
      ->check(CLI::IsMember({"fast", "full"}));
  add_out(c_verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (c_inv->parsed()) {
      const StateFile sf = parse_state_json(read_text_file(state_path));
      if (!sf.pure) {
        throw std::domain_error(
            "invariant requires a pure state file (amplitudes)");
      }
      const double v =
          evaluate_normalized(monotone(monotone_name), normalize(*sf.pure));
      emit(out_path, "{\"value\": " + format_double(v) + "}\n");
    } else if (c_roof->parsed()) {
      const StateFile sf = parse_state_json(read_text_file(state_path));
      RoofOptions opts;
      opts.restarts = restarts;
      opts.seed = seed;
      const RoofResult res =
          convex_roof(monotone(monotone_name), as_mixed(sf), opts);
      emit(out_path, to_json(res) + "\n");
    } else if (c_rescale->parsed()) {
      const GhzwFamily fam = resolve_family(family_spec);
      const double t = trace_factor(fam, p);
      const double pp = p_prime_from_p(fam, p);
      const double value = roof_via_rescaling(fam, p);
      emit(out_path, "{\"T\": " + format_double(t) +
                         ", \"p_prime\": " + format_double(pp) +
                         ", \"value\": " + format_double(value) + "}\n");
    } else if (c_curve->parsed()) {
      const GhzwFamily fam = resolve_family(family_spec);
      emit(out_path, curve_csv(convexify_curve(curve_grid(fam, step))));
    } else if (c_surface->parsed()) {
      if (opt_p->count() > 0) {
        emit(out_path, "{\"p\": " + format_double(p) +
                           ", \"q\": " + format_double(q) + ", \"char\": " +
                           format_double(char_surface(p, q)) + "}\n");
      } else {
        emit(out_path, surface_csv(surface_convexify(surface_grid(surf_step))));
      }
    } else if (c_classify->parsed()) {
      const StateFile sf = parse_state_json(read_text_file(state_path));
      RoofOptions opts;
      opts.restarts = restarts;
      opts.seed = seed;
      const ZeroClass cls =
          zero_class(monotone(monotone_name), as_mixed(sf), opts);
      emit(out_path,
           std::string("{\"class\": \"") + to_string(cls) + "\"}\n");
    } else if (c_verify->parsed()) {
      const std::vector<PropertyResult> results = run_verify_suite(suite);
      std::string report;
      bool all_passed = true;
      for (const PropertyResult& r : results) {
        if (r.passed) {
          report += "PASS " + r.name + "\n";
        } else {
          all_passed = false;
          report += "FAIL " + r.name + ": " + r.detail + "\n";
        }
      }
      emit(out_path, report);
      if (!all_passed) return 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
