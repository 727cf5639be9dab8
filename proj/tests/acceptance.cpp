// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Everything is seeded, so a red line reproduces exactly.
#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "epw/incidence.hpp"
#include "epw/lattice.hpp"
#include "epw/strata.hpp"
#include "epw/zlines.hpp"
#include "epw_cli/commands.hpp"
#include "support.hpp"

using namespace epw;
using epw::cli::json;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects failures with a short reason; the first few are printed.
class Tally {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    if (failures_.size() < 4) failures_.push_back(what);
    ++failed_;
  }
  bool ok() const { return failed_ == 0; }
  std::string failures() const {
    std::string s;
    for (const auto& f : failures_) s += (s.empty() ? "" : "; ") + f;
    if (failed_ > failures_.size()) s += "; ...";
    return s;
  }
  std::size_t checks() const { return checks_; }

 private:
  std::size_t checks_ = 0, failed_ = 0;
  std::vector<std::string> failures_;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

const Field& f107() {
  static const Field f = Field::prime(107);
  return f;
}

const ZLine& zline() {
  static const ZLine z = cli::standard_zline(f107());
  return z;
}

const Lagrangian& generic_A() {
  static const Lagrangian A = random_lagrangian(f107(), 11);
  return A;
}

// Lagrangians through the standard z-line and their sextics, seeds 1..5.
struct Seeded {
  Lagrangian A;
  SexticResult sextic;
  double seconds = 0;
};

const std::vector<Seeded>& seeded() {
  static const std::vector<Seeded> all = [] {
    std::vector<Seeded> out;
    for (std::uint64_t s = 1; s <= 5; ++s) {
      const auto t0 = Clock::now();
      Lagrangian A = lagrangian_through(zline(), f107(), s);
      SexticOptions so;
      so.validation = 1000;
      SexticResult r = sextic_interpolate(A, so);
      out.push_back({std::move(A), std::move(r), seconds_since(t0)});
    }
    return out;
  }();
  return all;
}

Outcome appendix_script_1() {
  Tally t;
  double worst = 0;
  for (std::size_t i = 0; i < seeded().size(); ++i) {
    const auto& s = seeded()[i];
    const auto t0 = Clock::now();
    const auto tag = fmt("seed %zu", i + 1);
    t.expect(s.sextic.nullity == 1, tag + " nullity");
    t.expect(s.sextic.f.is_homogeneous() && s.sextic.f.total_degree() == 6, tag + " degree");
    t.expect(s.sextic.validation_failures == 0, tag + " validation");
    ScanOptions so;
    so.mode = ScanMode::Exhaustive;
    const LineScan on_X = line_scan(s.A, Pencil::F(zline().v1, zline().v2), 1, so);
    t.expect(on_X.secancy.identically_zero && on_X.min_stratum >= 1, tag + " pi1(l) not in X_A");
    const LineScan d2 = line_scan(s.A, Pencil::F(zline().v1, zline().v2), 2, so);
    t.expect(d2.secancy.degree() == 4 && d2.secancy.squarefree(), tag + " target-2 secancy");
    const double secs = s.seconds + seconds_since(t0);
    worst = std::max(worst, secs);
    t.expect(secs <= 60, tag + " over 60 s");
  }
  return {t.ok(), fmt("5 seeds over GF(107), slowest %.1f s", worst) + (t.ok() ? "" : ": " + t.failures())};
}

Outcome appendix_script_2() {
  Tally t;
  const auto& s = seeded().front();
  const TangentQuadricReport r = tangent_quadric_test(zline(), s.A, s.sextic.f);
  t.expect(r.points.size() == 4, "four secant points");
  t.expect(r.extension_degree <= 4, "extension degree");
  t.expect(r.rank == 10, "rank");
  const std::size_t control = cli::negative_control_rank(f107());
  t.expect(control <= 9, "negative control");
  return {t.ok(), fmt("rank %zu over GF(107^%d), control rank %zu", r.rank, r.extension_degree, control) +
                      (t.ok() ? "" : ": " + t.failures())};
}

// Points of Y_A with stratum exactly 2 from psi_1 fibers.
std::vector<Subspace> sample_Y(const Lagrangian& A, std::size_t count) {
  std::vector<Subspace> out;
  for (std::uint64_t s = 0; out.size() < count && s < 400; ++s) {
    const SamplePoint sp = sample_on_X(A, 1000 + s);
    if (sp.k != 1) continue;
    Psi1Options po;
    po.lines = 4;
    po.seed = s;
    po.max_roundtrips = 0;
    for (const auto& u : psi1_fiber_scan(A, sp.v, po).fiber)
      if (u.stratum == 2 && out.size() < count) out.push_back(u.U);
  }
  return out;
}

Outcome three_to_one() {
  Tally t;
  const auto Us = sample_Y(generic_A(), 40);
  t.expect(Us.size() >= 20, "too few Y_A points");
  std::size_t squarefree = 0;
  for (std::size_t i = 0; i < Us.size(); ++i) {
    const Pi1Fiber fib = pi1_fiber(generic_A(), Us[i]);
    const int sum = std::accumulate(fib.factor_degrees.begin(), fib.factor_degrees.end(), 0);
    t.expect(fib.degree == 3, fmt("U%zu degree %d", i, fib.degree));
    if (fib.squarefree) {
      ++squarefree;
      t.expect(sum == 3, fmt("U%zu factor degrees sum %d", i, sum));
    }
    for (const auto& p : fib.points) t.expect(p.type == OrbitType::OmegaOpen, fmt("U%zu root not OmegaOpen", i));
  }
  t.expect(10 * squarefree >= 9 * Us.size(), "squarefree below 90%");
  return {t.ok(), fmt("%zu Y_A points, %zu squarefree cubics", Us.size(), squarefree) +
                      (t.ok() ? "" : ": " + t.failures())};
}

Outcome quartic_sections() {
  Tally t;
  std::size_t lines = 0, quartic = 0, points = 0;
  for (std::uint64_t s = 0; points < 3 && s < 50; ++s) {
    const SamplePoint sp = sample_on_X(generic_A(), 500 + s);
    if (sp.k != 1) continue;
    ++points;
    Psi1Options po;
    po.lines = 20;
    po.seed = s;
    po.max_roundtrips = 0;
    for (const auto& l : psi1_fiber_scan(generic_A(), sp.v, po).lines) {
      ++lines;
      t.expect(!l.secancy.identically_zero, "line inside D^2");
      t.expect(l.secancy.degree() <= 4, "degree above 4");
      quartic += !l.secancy.identically_zero && l.secancy.degree() == 4;
    }
  }
  t.expect(lines >= 20, "too few lines");
  t.expect(5 * quartic >= 4 * lines, "quartic share below 80%");
  return {t.ok(), fmt("%zu of %zu lines in Q_p over %zu points have degree 4", quartic, lines, points) +
                      (t.ok() ? "" : ": " + t.failures())};
}

Outcome gradient_duality() {
  Tally t;
  const Lagrangian& A = generic_A();
  SexticOptions so;
  so.validation = 0;
  const MultiPoly f = sextic_interpolate(A, so).f;
  std::size_t tested = 0;
  for (const auto& sp : sample_many_on_X(A, 5, 80)) {
    if (sp.k != 1 || tested == 50) continue;
    const Vec g = f.gradient_at(sp.v);
    t.expect(!is_zero(g), "vanishing gradient at a smooth point");
    t.expect(projectively_equal(g, phi_pair(p_of_v(A, sp.v)).H), "gradient differs from phi_2");
    t.expect(stratum(A, FamilyKind::Fdual, {g}) >= 1, "gradient off X_A*");
    ++tested;
  }
  t.expect(tested == 50, "too few smooth points");
  return {t.ok(), fmt("%zu smooth points, exact equality", tested) + (t.ok() ? "" : ": " + t.failures())};
}

Outcome zline_battery() {
  Tally t;
  for (std::size_t i = 0; i < seeded().size(); ++i) {
    const auto& s = seeded()[i];
    BatteryOptions bo;
    bo.sextic = s.sextic.f;
    const BatteryReport r = four_secant_battery(zline(), s.A, bo);
    const auto tag = fmt("seed %zu", i + 1);
    t.expect(r.pencil_W.pass(), tag + " X_A side");
    t.expect(r.pencil_Wdual.pass(), tag + " X_A* side");
    t.expect(r.line_G.pass(), tag + " Y_A side");
    t.expect(r.line_G.exhaustive, tag + " Y_A side not exhaustive");
    t.expect(r.partials.pass(), tag + " quintic partials");
  }
  return {t.ok(), "5 seeds, L_l scanned over GF(107) and infinity" + (t.ok() ? "" : ": " + t.failures())};
}

Outcome reduction_identity() {
  Tally t;
  Rng rng(9);
  std::size_t pairs = 0, params = 0;
  for (int i = 0; i < 10; ++i) {
    const Lagrangian A = random_lagrangian(f107(), rng.next());
    const ReductionReport r = reduction_identity_check(A, random_gline(f107(), rng));
    t.expect(r.pass() && r.exhaustive, fmt("pair %d", i));
    params += r.checked;
    ++pairs;
  }
  const ReductionReport z = reduction_identity_check(seeded().front().A, zline().L());
  t.expect(z.c == 2, fmt("z-line c = %zu", z.c));
  t.expect(z.pass() && z.exhaustive, "z-line pair");
  params += z.checked;
  ++pairs;
  return {t.ok(), fmt("%zu pairs, %zu parameters, c = %zu on L_l", pairs, params, z.c) +
                      (t.ok() ? "" : ": " + t.failures())};
}

Outcome property_suites() {
  constexpr int n = 1000;
  Tally t;
  const Field g = Field::prime(10007);
  const Field& f = f107();
  {
    Rng rng(101);
    for (int i = 0; i < n; ++i) {
      const MultiVector x = test::random_mv(g, 3, rng), y = test::random_mv(g, 3, rng);
      t.expect(omega(x, y) == -omega(y, x) && omega(x, x).is_zero(), "omega antisymmetry");
    }
  }
  {
    Rng rng(102);
    for (int i = 0; i < n; ++i) {
      const Subspace U = Subspace::span(g, kDimW, {random_vec(g, 6, rng), random_vec(g, 6, rng), random_vec(g, 6, rng)});
      for (const Subspace& S : {family_F(random_vec(g, 6, rng)), family_Fdual(random_vec(g, 6, rng)), family_T(U)})
        t.expect(S.dim() == 10 && is_isotropic(S), "family not Lagrangian");
    }
  }
  {
    Rng rng(103);
    for (int i = 0; i < n; ++i) {
      Vec v;
      const MultiVector a = test::random_omega_open(g, rng, &v);
      const auto beta = divide(v, a);
      if (!beta) {
        t.expect(false, "divide failed");
        continue;
      }
      const MultiVector vv = MultiVector::vector(v);
      const MultiVector beta2 = *beta + wedge(vv, MultiVector::vector(random_vec(g, kDimW, rng)));
      t.expect(projectively_equal(five_form_covector(wedge(vv, *beta, *beta)), five_form_covector(wedge(vv, beta2, beta2))),
               "phi_2 depends on the lift");
    }
  }
  {
    Rng rng(104);
    for (int i = 0; i < n; ++i) {
      const Subspace U = Subspace::span(f, kDimW, {random_vec(f, 6, rng), random_vec(f, 6, rng), random_vec(f, 6, rng)});
      const CubeModel m(U);
      MultiVector a(3, family_T(U).random_element(rng));
      if (i % 2) {
        CubeModel::Chart ch = m.chart(a);
        ch.M.set_row(2, axpy(scale(f.random(rng), ch.M.row(0)), f.random(rng), ch.M.row(1)));
        a = m.from_chart(ch);
      }
      t.expect(ru_det(m, a).is_zero() == (classify(a) != OrbitType::Generic), "classifier vs determinant");
    }
  }
  {
    Rng rng(105);
    const Lagrangian A = random_lagrangian(f, 2);
    const FamilyKind kinds[] = {FamilyKind::F, FamilyKind::Fdual, FamilyKind::T};
    for (int i = 0; i < n; ++i) {
      const FamilyKind kind = kinds[i % 3];
      ScanOptions so;
      so.mode = ScanMode::Exhaustive;
      const LineScan ls = line_scan(A, random_pencil(f, kind, rng), kind == FamilyKind::T ? 2 : 1, so);
      t.expect(ls.secancy.identically_zero ? ls.min_stratum >= 1 : ls.secancy.base_roots() == ls.hits,
               "scan hits differ from secancy roots");
    }
  }
  return {t.ok(), fmt("5 suites x %d instances, %zu checks", n, t.checks()) + (t.ok() ? "" : ": " + t.failures())};
}

Outcome lattice_checks() {
  Tally t;
  const std::map<std::string, std::pair<std::int64_t, std::int64_t>> expected = {
      {"t1+t2", {-4, 2}}, {"d", {-2, 1}}, {"t1", {-2, 1}}, {"2d+t1+t2", {-12, 2}}};
  std::string t1_note;
  for (const auto& d : period_divisor_table()) {
    const auto it = expected.find(d.name);
    t.expect(it != expected.end(), "unexpected class " + d.name);
    if (it == expected.end()) continue;
    t.expect(d.square == it->second.first && d.div_in_lambda_y == it->second.second, d.name);
    if (d.name == "t1") t1_note = fmt(", t1 has div %lld in Lambda itself", static_cast<long long>(d.div_in_lambda));
  }
  const IntLattice L = IntLattice::k3n(3);
  const LatVec a = L.parse_vector("2H-delta"), b = L.parse_vector("12H-9delta");
  t.expect(L.square(a) == 4 && divisibility(L, a) == 2, "2H-delta");
  const auto [prim, content] = primitive_part(b);
  t.expect(L.square(b) == -36 && content == 3 && divisibility(L, prim) == 4, "12H-9delta");
  t.expect(mukai_check().pass(), "Mukai frame");
  std::size_t flagged = 0;
  for (const auto& c : section_lattice_claims()) flagged += !c.consistent();
  return {t.ok(), "divisors measured in Lambda_Y" + t1_note + fmt(", %zu section claims flagged", flagged) +
                      (t.ok() ? "" : ": " + t.failures())};
}

Outcome determinism() {
  Tally t;
  cli::GenOptions go;
  go.seed = 3;
  go.zline = json::parse(R"({"v1":[1,0,0,0,0,0],"v2":[0,1,0,0,0,0],
    "alpha":[0,0,0,1,0,0,0,0,1,1,0,0,0,0,0]})");
  const std::string gen = cli::canonical_dump(cli::scenario_to_json(cli::cmd_gen(go)));
  t.expect(gen == cli::canonical_dump(cli::scenario_to_json(cli::cmd_gen(go))), "gen");
  const cli::Scenario s = cli::scenario_from_json(json::parse(gen));
  const ZLine z = s.zlines.at("z");

  MultiPoly sextic;
  cli::VerifyOptions base;
  base.trials = 16;
  (void)cli::verify_sextic(s, base, 0, &sextic);

  using Command = std::function<cli::Report(const cli::VerifyOptions&)>;
  const std::vector<std::pair<std::string, Command>> commands = {
      {"genericity", [&](const auto& o) { return cli::verify_genericity(s, o); }},
      {"sextic", [&](const auto& o) { return cli::verify_sextic(s, o, 200); }},
      {"fiber3", [&](const auto& o) { return cli::verify_fiber3(s, std::nullopt, o); }},
      {"surface-fiber", [&](const auto& o) { return cli::verify_surface_fiber(s, std::nullopt, o); }},
      {"zline-battery", [&](const auto& o) { return cli::verify_zline_battery(s, z, sextic, o); }},
      {"tangent-quadric", [&](const auto& o) { return cli::verify_tangent_quadric(s, z, sextic, o); }},
      {"reduction-identity", [&](const auto& o) { return cli::verify_reduction_identity(s, z.L(), o); }},
      {"lattice eval", [](const auto&) { return cli::verify_lattice_eval("U^2+E8m1^2+(-2)^2", "2d+t1+t2"); }},
      {"lattice mukai", [](const auto&) { return cli::verify_lattice_mukai(); }},
      {"reproduce-appendix", [](const auto& o) { return cli::verify_reproduce_appendix(107, o, 200); }},
  };
  for (const auto& [name, run] : commands) {
    std::string first;
    for (std::size_t jobs : {1, 4, 1}) {
      cli::VerifyOptions o = base;
      o.jobs = jobs;
      const std::string dump = cli::canonical_dump(run(o).to_json());
      if (first.empty())
        first = dump;
      else
        t.expect(dump == first, fmt("%s at %zu jobs", name.c_str(), jobs));
    }
  }
  return {t.ok(), fmt("gen plus %zu commands, jobs 1/4/1 byte-identical", commands.size()) +
                      (t.ok() ? "" : ": " + t.failures())};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"appendix script 1 (sextic, z-line on X_A, four-secant)", appendix_script_1},
      {"appendix script 2 (tangent-plane quadric rank)", appendix_script_2},
      {"3:1 incidence fibers", three_to_one},
      {"quartic sections of Q_p", quartic_sections},
      {"gradient duality", gradient_duality},
      {"z-line battery", zline_battery},
      {"reduction identity", reduction_identity},
      {"structural property suites", property_suites},
      {"lattice checks", lattice_checks},
      {"determinism across parallelism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("[%s] %2zu %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str(),
                seconds_since(t0));
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed ? 1 : 0;
}
