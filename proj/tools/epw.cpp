// epw: generate Lagrangian scenarios and run verification reports.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "epw/error.hpp"
#include "epw_cli/commands.hpp"

using namespace epw;
using namespace epw::cli;

namespace {

struct VerifyFlags {
  std::string scenario;
  std::optional<std::uint64_t> seed;
  std::size_t jobs = 1;
  std::size_t trials = 64;
  std::string report;
  std::string U, v, K, zline, sextic, out;
  std::string lattice, vec;
  std::uint32_t prime = 107;
  std::size_t validation = 1000;
};

VerifyOptions options_for(const VerifyFlags& fl, const std::optional<Scenario>& s) {
  VerifyOptions o;
  o.seed = fl.seed ? *fl.seed : (s && s->seed ? *s->seed : 1);
  o.jobs = fl.jobs == 0 ? 1 : fl.jobs;
  o.trials = fl.trials;
  return o;
}

std::optional<MultiPoly> load_sextic(const Scenario& s, const std::string& path) {
  if (path.empty()) return std::nullopt;
  try {
    return poly_from_json(s.A.field(), read_json_file(path));
  } catch (const InvalidInput& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

int emit(const Report& r, const std::string& path) {
  const std::string text = canonical_dump(r.to_json());
  if (path.empty())
    std::cout << text;
  else
    write_text_file(path, text);
  std::cerr << r.summary();
  return r.exit_code();
}

Report run_verify(const std::string& sub, const VerifyFlags& fl) {
  if (sub == "lattice-eval") return verify_lattice_eval(fl.lattice, fl.vec);
  if (sub == "lattice-mukai") return verify_lattice_mukai();
  if (sub == "reproduce-appendix") return verify_reproduce_appendix(fl.prime, options_for(fl, std::nullopt), fl.validation);

  const std::optional<Scenario> s = load_scenario(fl.scenario);
  const VerifyOptions o = options_for(fl, s);
  const Field f = s->A.field();
  if (sub == "genericity") return verify_genericity(*s, o);
  if (sub == "sextic") {
    MultiPoly poly;
    Report r = verify_sextic(*s, o, fl.validation, &poly);
    if (!fl.out.empty() && r.pass()) write_text_file(fl.out, canonical_dump(poly_to_json(poly)));
    return r;
  }
  if (sub == "fiber3") {
    std::optional<Subspace> U;
    if (!fl.U.empty()) U = parse_subspace(f, json_arg(fl.U), 3);
    return verify_fiber3(*s, U, o);
  }
  if (sub == "surface-fiber") {
    std::optional<Vec> v;
    if (!fl.v.empty()) {
      try {
        v = vec_from_json(f, json_arg(fl.v), kDimW);
      } catch (const SchemaError& e) {
        throw InvalidInput(e.what());
      }
    }
    return verify_surface_fiber(*s, v, o);
  }
  if (sub == "zline-battery" || sub == "tangent-quadric") {
    if (fl.zline.empty() && s->zlines.size() != 1)
      throw InvalidInput("--zline is required unless the scenario stores exactly one z-line");
    const ZLine z = fl.zline.empty() ? s->zlines.begin()->second : resolve_zline(*s, fl.zline);
    const auto poly = load_sextic(*s, fl.sextic);
    return sub == "zline-battery" ? verify_zline_battery(*s, z, poly, o) : verify_tangent_quadric(*s, z, poly, o);
  }
  if (sub == "reduction-identity") {
    if (fl.K.empty()) {
      if (fl.zline.empty()) throw InvalidInput("--K or --zline is required");
      return verify_reduction_identity(*s, resolve_zline(*s, fl.zline).L(), o);
    }
    return verify_reduction_identity(*s, parse_gline(f, json_arg(fl.K)), o);
  }
  throw InvalidInput("unknown verify subcommand " + sub);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"EPW sextic and cube computations over finite fields"};
  app.require_subcommand(1);

  GenOptions gen;
  std::string gen_zline, gen_out;
  auto* g = app.add_subcommand("gen", "Generate a random Lagrangian scenario");
  g->add_option("--prime", gen.prime, "Field characteristic")->capture_default_str();
  g->add_option("--ext", gen.ext, "Extension degree (1 to 4)")->capture_default_str()->check(CLI::Range(1, kMaxExtension));
  g->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
  g->add_option("--contains-zline", gen_zline, "Z-line JSON file (or inline JSON) the Lagrangian must contain");
  g->add_flag("--contains-decomposable", gen.contains_decomposable, "Force a decomposable 3-form into A");
  g->add_option("-o,--output", gen_out, "Scenario file (stdout if omitted)");

  VerifyFlags fl;
  std::string chosen;
  auto* verify = app.add_subcommand("verify", "Run a verification and emit a JSON report");
  verify->require_subcommand(1);

  auto common = [&](CLI::App* c, bool scenario) {
    if (scenario) c->add_option("scenario", fl.scenario, "Scenario JSON file")->required();
    c->add_option("--seed", fl.seed, "Seed (default: the scenario seed, else 1)");
    c->add_option("--jobs", fl.jobs, "Worker threads; never changes the report")->capture_default_str();
    c->add_option("--report", fl.report, "Write the report here instead of stdout");
    c->callback([&chosen, c] { chosen = c->get_name(); });
  };

  auto* gn = verify->add_subcommand("genericity", "Random-line probe for stratum jumps and decomposable points");
  common(gn, true);
  gn->add_option("--trials", fl.trials, "Lines per family")->capture_default_str();

  auto* sx = verify->add_subcommand("sextic", "Interpolate the sextic f_A and validate it on fresh points");
  common(sx, true);
  sx->add_option("--validation", fl.validation, "Fresh points of X_A checked")->capture_default_str();
  sx->add_option("-o,--output", fl.out, "Write the polynomial JSON here");

  auto* f3 = verify->add_subcommand("fiber3", "pi_1 fiber over a point of Y_A");
  common(f3, true);
  f3->add_option("--U", fl.U, "3 vectors spanning U (inline JSON or file); sampled if omitted");

  auto* sf = verify->add_subcommand("surface-fiber", "psi_1 fiber over a smooth point of X_A");
  common(sf, true);
  sf->add_option("--v", fl.v, "Point of X_A (inline JSON or file); sampled if omitted");
  sf->add_option("--trials", fl.trials, "Lines through Q_p")->capture_default_str();

  auto* zb = verify->add_subcommand("zline-battery", "Four-secant battery of a z-line in P(A)");
  common(zb, true);
  zb->add_option("--zline", fl.zline, "Stored z-line name, file or inline JSON");
  zb->add_option("--sextic", fl.sextic, "Polynomial JSON from 'verify sextic -o' (interpolated if omitted)");

  auto* tq = verify->add_subcommand("tangent-quadric", "Quadric test on the projected tangent planes");
  common(tq, true);
  tq->add_option("--zline", fl.zline, "Stored z-line name, file or inline JSON");
  tq->add_option("--sextic", fl.sextic, "Polynomial JSON (interpolated if omitted)");

  auto* ri = verify->add_subcommand("reduction-identity", "Symplectic reduction along a line K of G(3,W)");
  common(ri, true);
  ri->add_option("--K", fl.K, "{\"V\": [2 vectors], \"P\": [4 vectors]} (inline JSON or file)");
  ri->add_option("--zline", fl.zline, "Use K = L_l of this z-line instead");

  auto* lat = verify->add_subcommand("lattice", "Integral lattice arithmetic");
  lat->require_subcommand(1);
  auto* le = lat->add_subcommand("eval", "Square, divisibility and content of a vector");
  le->add_option("--lattice", fl.lattice, "Lattice spec, e.g. \"U^2+E8m1^2+(-2)^2\"")->required();
  le->add_option("--vec", fl.vec, "Vector, e.g. t1+t2 or [1,0,...]")->required();
  le->add_option("--report", fl.report, "Write the report here instead of stdout");
  le->callback([&] { chosen = "lattice-eval"; });
  auto* lm = lat->add_subcommand("mukai", "Mukai frame, K3^[3] classes and period-domain divisors");
  lm->add_option("--report", fl.report, "Write the report here instead of stdout");
  lm->callback([&] { chosen = "lattice-mukai"; });

  auto* ra = verify->add_subcommand("reproduce-appendix", "Both appendix computations at a fresh seed");
  ra->add_option("--prime", fl.prime, "Field characteristic")->capture_default_str();
  ra->add_option("--seed", fl.seed, "Seed (default 1)");
  ra->add_option("--jobs", fl.jobs, "Worker threads; never changes the report")->capture_default_str();
  ra->add_option("--validation", fl.validation, "Fresh points used to validate the sextic")->capture_default_str();
  ra->add_option("--report", fl.report, "Write the report here instead of stdout");
  ra->callback([&] { chosen = "reproduce-appendix"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadInput;
  }

  try {
    if (g->parsed()) {
      if (!gen_zline.empty()) gen.zline = json_arg(gen_zline);
      const Scenario s = cmd_gen(gen);
      const std::string text = canonical_dump(scenario_to_json(s));
      if (gen_out.empty())
        std::cout << text;
      else
        write_text_file(gen_out, text);
      return kExitPass;
    }
    return emit(run_verify(chosen, fl), fl.report);
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const Degenerate& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
}
