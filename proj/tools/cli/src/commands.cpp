#include "epw_cli/commands.hpp"

#include <algorithm>
#include <map>

#include "epw/error.hpp"
#include "epw/parallel.hpp"

namespace epw::cli {

namespace {

template <class F>
Report guarded(Report r, F&& body) {
  try {
    body(r);
  } catch (const Degenerate& e) {
    r.check("completed without hitting a degenerate locus", false, {{"error", e.what()}});
  }
  return r;
}

void common_params(Report& r, const VerifyOptions& o) { r.params()["seed"] = o.seed; }

json fiber_point_json(const FiberPoint& p) {
  json j;
  j["t"] = param_to_json(p.t);
  j["field_degree"] = p.field_degree;
  j["type"] = to_string(p.type);
  j["alpha"] = vec_to_json(p.alpha.coords());
  if (p.type == OrbitType::OmegaOpen) {
    j["phi1"] = vec_to_json(p.v);
    j["phi2"] = vec_to_json(p.H);
    j["phi1_on_X"] = p.v_on_X;
    j["phi2_on_Xdual"] = p.H_on_Xd;
  }
  return j;
}

json sub_battery_json(const SubBattery& b) {
  json j;
  j["family"] = to_string(b.kind);
  j["base_stratum"] = b.base;
  j["exhaustive"] = b.exhaustive;
  if (b.exhaustive) j["min_stratum"] = b.min_stratum;
  j["all_points_on_locus"] = b.all_on_locus;
  j["secancy"] = secancy_to_json(b.secancy);
  return j;
}

void battery_checks(Report& r, const std::string& tag, const SubBattery& b) {
  r.check(tag + " every point has stratum >= " + std::to_string(b.base), b.all_on_locus, sub_battery_json(b));
  r.check(tag + " target-" + std::to_string(b.base + 1) + " secancy of degree 4, squarefree",
          b.degree == 4 && b.squarefree,
          {{"degree", b.degree}, {"squarefree", b.squarefree}, {"factor_degrees", b.factor_degrees}});
}

MultiPoly interpolate_or_take(const Lagrangian& A, const std::optional<MultiPoly>& given, const VerifyOptions& o,
                              Report& r) {
  if (given) return given->field() == A.field() ? *given : throw InvalidInput("sextic is over a different field");
  SexticOptions so;
  so.seed = Rng::derive(o.seed, 0x5e);
  so.jobs = o.jobs;
  so.validation = 0;
  const SexticResult res = sextic_interpolate(A, so);
  r.data()["sextic_terms"] = res.f.terms().size();
  return res.f;
}

ScanOptions scan_options(const VerifyOptions& o, std::uint64_t salt) {
  ScanOptions so;
  so.seed = Rng::derive(o.seed, salt);
  so.jobs = o.jobs;
  return so;
}

Vec sample_smooth(const Lagrangian& A, std::uint64_t seed) {
  for (std::uint64_t i = 0; i < 16; ++i) {
    const SamplePoint sp = sample_on_X(A, Rng::derive(seed, i));
    if (sp.k == 1) return sp.v;
  }
  throw Degenerate("no smooth point of X_A found");
}

}  // namespace

ZLine standard_zline(const Field& f) {
  const MultiVector alpha =
      MultiVector::blade(f, {1, 5}) + MultiVector::blade(f, {2, 6}) + MultiVector::blade(f, {3, 4});
  return zline_validate(unit_vec(f, kDimW, 0), unit_vec(f, kDimW, 1), alpha);
}

std::size_t negative_control_rank(const Field& f) {
  std::vector<std::pair<Vec, Vec>> lines;
  for (int l = 1; l <= 4; ++l) {
    const FieldElem x = f.from_int(l);
    lines.emplace_back(Vec{f.one(), f.zero(), x, f.zero()}, Vec{f.zero(), f.one(), f.zero(), x});
  }
  return quadric_rank_of_lines(lines);
}

Subspace parse_subspace(const Field& f, const json& j, std::size_t dim) {
  if (!j.is_array()) throw InvalidInput("subspace must be an array of vectors");
  std::vector<Vec> rows;
  try {
    for (const auto& r : j) rows.push_back(vec_from_json(f, r, kDimW));
  } catch (const SchemaError& e) {
    throw InvalidInput(e.what());
  }
  const Subspace S = Subspace::span(f, kDimW, rows);
  if (S.dim() != dim) throw InvalidInput("expected a subspace of dimension " + std::to_string(dim));
  return S;
}

GLine parse_gline(const Field& f, const json& j) {
  if (!j.is_object() || !j.contains("V") || !j.contains("P")) throw InvalidInput("K must be {\"V\": [...], \"P\": [...]}");
  return GLine(parse_subspace(f, j.at("V"), 2), parse_subspace(f, j.at("P"), 4));
}

ZLine resolve_zline(const Scenario& s, const std::string& arg) {
  const auto it = s.zlines.find(arg);
  if (it != s.zlines.end()) return it->second;
  const json j = json_arg(arg);
  try {
    return zline_from_json(s.A.field(), j);
  } catch (const SchemaError& e) {
    throw InvalidInput(e.what());
  }
}

Scenario cmd_gen(const GenOptions& opts) {
  const Field f = opts.ext == 1 ? Field::prime(opts.prime) : build_extension(opts.prime, opts.ext);
  Scenario s;
  s.seed = opts.seed;
  if (opts.zline && opts.contains_decomposable) throw InvalidInput("choose one constraint");
  if (opts.zline) {
    ZLine z;
    try {
      z = zline_from_json(Field::prime(opts.prime), *opts.zline);
    } catch (const SchemaError& e) {
      throw InvalidInput(e.what());
    }
    if (!(f == z.field())) z = z.embed(f);
    s.A = lagrangian_through(z, f, opts.seed);
    s.zlines.emplace("z", z);
  } else if (opts.contains_decomposable) {
    s.A = random_lagrangian(f, opts.seed, Constraint::contains_decomposable());
  } else {
    s.A = random_lagrangian(f, opts.seed);
  }
  return s;
}

Report verify_genericity(const Scenario& s, const VerifyOptions& o) {
  Report r("genericity");
  common_params(r, o);
  r.params()["trials"] = o.trials;
  return guarded(std::move(r), [&](Report& r) {
    const GenericityReport g = genericity_probe(s.A, o.trials, o.seed, o.jobs);
    r.data()["verdict"] = g.verdict();
    r.data()["points_classified"] = g.points_classified;
    r.data()["omega_open_points"] = g.omega_open_hits;
    r.check("no random F line meets stratum 3", g.F_hits == 0, {{"lines_hit", g.F_hits}});
    r.check("no random F* line meets stratum 3", g.Fdual_hits == 0, {{"lines_hit", g.Fdual_hits}});
    r.check("no random T line meets stratum 4", g.T_hits == 0, {{"lines_hit", g.T_hits}});
    r.check("no decomposable point of P(A) found", g.decomposable_hits == 0, {{"hits", g.decomposable_hits}});
  });
}

Report verify_sextic(const Scenario& s, const VerifyOptions& o, std::size_t validation, MultiPoly* out) {
  Report r("sextic");
  common_params(r, o);
  r.params()["validation"] = validation;
  return guarded(std::move(r), [&](Report& r) {
    SexticOptions so;
    so.seed = o.seed;
    so.jobs = o.jobs;
    so.validation = validation;
    try {
      const SexticResult res = sextic_interpolate(s.A, so);
      r.data()["rows"] = res.rows;
      r.data()["terms"] = res.f.terms().size();
      r.check("interpolation nullity 1", res.nullity == 1, {{"nullity", res.nullity}});
      r.check("homogeneous of degree exactly 6", res.f.is_homogeneous() && res.f.total_degree() == 6,
              {{"degree", res.f.total_degree()}});
      r.check("vanishes at fresh points of X_A", res.validation_failures == 0,
              {{"validated", res.validated}, {"failures", res.validation_failures}});
      if (out) *out = res.f;
    } catch (const InterpolationError& e) {
      r.check("interpolation nullity 1", false, {{"nullity", e.nullity()}, {"error", e.what()}});
    }
  });
}

Report verify_fiber3(const Scenario& s, const std::optional<Subspace>& U, const VerifyOptions& o) {
  Report r("fiber3");
  common_params(r, o);
  return guarded(std::move(r), [&](Report& r) {
    Subspace u;
    if (U) {
      u = *U;
    } else {
      Psi1Options po;
      po.lines = 8;
      po.seed = Rng::derive(o.seed, 1);
      po.jobs = o.jobs;
      const Psi1Report ps = psi1_fiber_scan(s.A, sample_smooth(s.A, o.seed), po);
      const auto it = std::find_if(ps.fiber.begin(), ps.fiber.end(), [](const FiberU& f) { return f.stratum == 2; });
      if (it == ps.fiber.end()) throw Degenerate("no point of Y_A found on the sampled fiber lines");
      u = it->U;
      r.data()["sampled"] = true;
    }
    r.data()["U"] = subspace_to_json(u);
    const Pi1Fiber fib = pi1_fiber(s.A, u);
    r.data()["cubic"] = unipoly_to_json(fib.cubic);
    r.data()["infinity_multiplicity"] = fib.infinity_multiplicity;
    r.data()["squarefree"] = fib.squarefree;
    r.data()["extension_degree"] = fib.extension.degree();
    json pts = json::array();
    for (const auto& p : fib.points) pts.push_back(fiber_point_json(p));
    r.data()["points"] = std::move(pts);
    int sum = 0;
    for (int d : fib.factor_degrees) sum += d;
    r.check("cubic of degree exactly 3", fib.degree == 3 && !fib.cubic.is_zero());
    r.check("factor degrees sum to 3", fib.squarefree ? sum == 3 : sum <= 3, {{"factor_degrees", fib.factor_degrees}});
    bool omega = !fib.points.empty(), images = !fib.points.empty();
    for (const auto& p : fib.points) {
      omega = omega && p.type == OrbitType::OmegaOpen;
      images = images && p.v_on_X && p.H_on_Xd;
    }
    r.check("every fiber point is OmegaOpen", omega);
    r.check("phi_1 images on X_A and phi_2 images on X_A*", images);
  });
}

Report verify_surface_fiber(const Scenario& s, const std::optional<Vec>& v, const VerifyOptions& o) {
  Report r("surface-fiber");
  common_params(r, o);
  r.params()["lines"] = o.trials;
  return guarded(std::move(r), [&](Report& r) {
    const Vec vv = v ? *v : sample_smooth(s.A, o.seed);
    r.data()["v"] = vec_to_json(vv);
    Psi1Options po;
    po.lines = o.trials;
    po.seed = Rng::derive(o.seed, 2);
    po.jobs = o.jobs;
    const Psi1Report ps = psi1_fiber_scan(s.A, vv, po);
    r.data()["p"] = vec_to_json(ps.p.coords());
    std::vector<int> degrees;
    for (const auto& l : ps.lines) degrees.push_back(l.secancy.identically_zero ? -1 : l.secancy.degree());
    r.data()["line_degrees"] = degrees;
    const auto quartic = static_cast<std::size_t>(std::count(degrees.begin(), degrees.end(), 4));
    const bool bounded = std::all_of(degrees.begin(), degrees.end(), [](int d) { return d >= 0 && d <= 4; });
    r.check("secancy degree at most 4 on every line", bounded);
    r.check("secancy degree exactly 4 on at least 80% of lines", 5 * quartic >= 4 * degrees.size(),
            {{"quartic_lines", quartic}, {"lines", degrees.size()}});
    bool inK = true, onQ = true, round = true;
    std::size_t checked = 0;
    json us = json::array();
    for (const auto& f : ps.fiber) {
      inK = inK && f.contains_v && f.p_in_T && f.stratum >= 2;
      onQ = onQ && f.on_Qp;
      if (f.roundtrip_checked) {
        ++checked;
        round = round && f.roundtrip;
      }
      us.push_back(subspace_to_json(f.U));
    }
    r.data()["fiber_points"] = std::move(us);
    r.check("every fiber point U has v in U, p in T_U, stratum >= 2", inK, {{"points", ps.fiber.size()}});
    r.check("every fiber point satisfies the Q_p Plucker equation", onQ);
    r.check("p is a pi_1 fiber point of every stratum-2 U", round, {{"checked", checked}});
  });
}

Report verify_zline_battery(const Scenario& s, const ZLine& z, const std::optional<MultiPoly>& sextic,
                            const VerifyOptions& o, bool with_partials) {
  Report r("zline-battery");
  common_params(r, o);
  r.params()["zline"] = zline_to_json(z);
  return guarded(std::move(r), [&](Report& r) {
    BatteryOptions bo;
    bo.scan = scan_options(o, 3);
    if (with_partials) bo.sextic = interpolate_or_take(s.A, sextic, o, r);
    const BatteryReport b = four_secant_battery(z, s.A, bo);
    battery_checks(r, "(i) P(W) pencil:", b.pencil_W);
    battery_checks(r, "(ii) P(W*) pencil:", b.pencil_Wdual);
    battery_checks(r, "(iii) L_l in G(3,W):", b.line_G);
    if (with_partials) {
      const PartialsCheck& p = b.partials;
      json d = {{"degree", p.degree}, {"roots_match", p.roots_match}, {"equal", p.equal}};
      if (!p.identically_zero) {
        d["gcd_affine"] = unipoly_to_json(p.gcd_affine);
        d["infinity_multiplicity"] = p.infinity_multiplicity;
      }
      r.check("quintic partials base locus: degree 4, same roots as (i)", p.pass(), d);
    }
  });
}

Report verify_tangent_quadric(const Scenario& s, const ZLine& z, const std::optional<MultiPoly>& sextic,
                              const VerifyOptions& o) {
  Report r("tangent-quadric");
  common_params(r, o);
  r.params()["zline"] = zline_to_json(z);
  return guarded(std::move(r), [&](Report& r) {
    const MultiPoly f = interpolate_or_take(s.A, sextic, o, r);
    const TangentQuadricReport t = tangent_quadric_test(z, s.A, f, scan_options(o, 4));
    json pts = json::array();
    for (const auto& p : t.points) pts.push_back(vec_to_json(p));
    r.data()["extension_degree"] = t.extension_degree;
    r.data()["factor_degrees"] = t.factor_degrees;
    r.data()["secant_points"] = std::move(pts);
    r.data()["hessian_ranks"] = t.hessian_ranks;
    r.data()["image_dims"] = t.image_dims;
    r.check("no quadric contains the four projected tangent lines (rank 10)", t.pass(), {{"rank", t.rank}});
    const std::size_t neg = negative_control_rank(s.A.field());
    r.check("negative control: four lines on a quadric give rank <= 9", neg <= 9, {{"rank", neg}});
  });
}

Report verify_reduction_identity(const Scenario& s, const GLine& K, const VerifyOptions& o) {
  Report r("reduction-identity");
  common_params(r, o);
  r.params()["K"] = {{"V", subspace_to_json(K.V())}, {"P", subspace_to_json(K.P())}};
  return guarded(std::move(r), [&](Report& r) {
    const RKReduction rk = rk_reduce(K);
    r.check("R_K is 6-dimensional and isotropic", rk.R.dim() == 6 && rk.isotropic);
    r.check("R_K equals T_U(0) meet T_U(1) meet T_U(inf)", rk.equals_intersection);
    ReductionOptions ro;
    ro.seed = o.seed;
    ro.jobs = o.jobs;
    const ReductionReport rep = reduction_identity_check(s.A, K, ro);
    r.data()["c"] = rep.c;
    r.data()["reduced_A_dim"] = rep.reduced_A_dim;
    r.data()["parameters_checked"] = rep.checked;
    r.data()["exhaustive"] = rep.exhaustive;
    json mm = json::array();
    for (const auto& m : rep.mismatches) mm.push_back({{"t", param_to_json(m.t)}, {"lhs", m.lhs}, {"rhs", m.rhs}});
    r.check("every reduce(T_U) is Lagrangian in the reduced space", rep.reduced_T_lagrangian);
    r.check("dim(T_U meet A) - c = dim(reduced meet) at every parameter", rep.mismatches.empty(),
            {{"mismatches", std::move(mm)}});
  });
}

Report verify_lattice_eval(const std::string& lattice, const std::string& vec) {
  Report r("lattice eval");
  r.params()["lattice"] = lattice;
  r.params()["vec"] = vec;
  const IntLattice L = IntLattice::parse(lattice);
  const LatVec x = L.parse_vector(vec);
  const std::int64_t sq = L.square(x);
  const std::int64_t dv = divisibility(L, x);
  const auto [prim, content] = primitive_part(x);
  r.data()["lattice"] = L.describe();
  r.data()["rank"] = L.rank();
  r.data()["vector"] = x;
  r.data()["square"] = sq;
  r.data()["divisibility"] = dv;
  r.data()["content"] = content;
  r.data()["primitive"] = prim;
  r.data()["primitive_square"] = L.square(prim);
  r.data()["primitive_divisibility"] = divisibility(L, prim);
  r.check("divisibility divides the square", sq % dv == 0);
  return r;
}

Report verify_lattice_mukai() {
  Report r("lattice mukai");
  auto add = [&](const std::string& group, const MukaiReport& m) {
    for (const auto& c : m.checks)
      r.check(group + ": " + c.name + " = " + std::to_string(c.expected), c.pass(), {{"computed", c.computed}});
  };
  add("Mukai lattice", mukai_check());
  add("K3^[3] classes", k3n3_divisor_check());
  const PeriodEmbedding pe = period_embedding();
  r.check("Lambda embeds isometrically as h^perp in Lambda_Y",
          pe.isometric && pe.orthogonal_to_h && pe.det_lambda == pe.det_h_perp,
          {{"det_lambda", pe.det_lambda}, {"det_h_perp", pe.det_h_perp}});
  // Stated square and divisibility of each period-domain divisor class.
  const std::map<std::string, std::pair<std::int64_t, std::int64_t>> stated = {
      {"t1+t2", {-4, 2}}, {"d", {-2, 1}}, {"t1", {-2, 1}}, {"2d+t1+t2", {-12, 2}}};
  json table = json::array();
  for (const auto& d : period_divisor_table()) {
    const auto& [sq, dv] = stated.at(d.name);
    r.check("period divisor " + d.name + ": square " + std::to_string(sq) + ", div " + std::to_string(dv) +
                " in Lambda_Y",
            d.square == sq && d.div_in_lambda_y == dv,
            {{"square", d.square}, {"div_in_Lambda_Y", d.div_in_lambda_y}, {"div_in_Lambda", d.div_in_lambda}});
    table.push_back({{"class", d.name},
                     {"square", d.square},
                     {"div_in_Lambda", d.div_in_lambda},
                     {"div_in_Lambda_Y", d.div_in_lambda_y}});
  }
  r.data()["period_divisors"] = std::move(table);
  json flags = json::array();
  for (const auto& c : section_lattice_claims()) {
    flags.push_back({{"claim", c.claim}, {"stated", c.stated}, {"computed", c.computed}, {"consistent", c.consistent()}});
    if (!c.consistent())
      r.note("U(2) paragraph: " + c.claim + " stated " + std::to_string(c.stated) + ", computed " +
             std::to_string(c.computed));
  }
  r.data()["section_lattice_flags"] = std::move(flags);
  return r;
}

Report verify_reproduce_appendix(std::uint32_t prime, const VerifyOptions& o, std::size_t validation) {
  Report r("reproduce-appendix");
  common_params(r, o);
  r.params()["prime"] = prime;
  r.params()["validation"] = validation;
  return guarded(std::move(r), [&](Report& r) {
    const Field f = Field::prime(prime);
    const ZLine z = standard_zline(f);
    r.data()["zline"] = zline_to_json(z);
    r.check("z-line is isotropic", z.isotropic);
    const Lagrangian A = lagrangian_through(z, f, o.seed);
    r.data()["lagrangian"] = subspace_to_json(A.subspace());
    const Scenario s{A, {{"z", z}}, o.seed};

    MultiPoly sextic;
    const Report sx = verify_sextic(s, o, validation, &sextic);
    for (const auto& c : sx.checks()) r.check("sextic: " + c.name, c.pass, c.detail);
    if (!sx.pass()) return;

    const Report bat = verify_zline_battery(s, z, sextic, o);
    for (const auto& c : bat.checks()) r.check("four-secant: " + c.name, c.pass, c.detail);

    const Report tq = verify_tangent_quadric(s, z, sextic, o);
    for (const auto& c : tq.checks()) r.check("tangent lines: " + c.name, c.pass, c.detail);
    r.data()["tangent_quadric"] = tq.to_json()["data"];

    const Report red = verify_reduction_identity(s, z.L(), o);
    for (const auto& c : red.checks()) r.check("reduction: " + c.name, c.pass, c.detail);
    r.check("reduction: c = 2 on L_l", red.to_json()["data"].value("c", 0) == 2,
            {{"c", red.to_json()["data"].value("c", 0)}});
    if (!r.pass()) r.note("a failure at one seed calls for re-seeding before it is treated as a defect");
  });
}

}  // namespace epw::cli
