// One line per acceptance criterion. Exit status is nonzero if any line fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "bh/bh.hpp"

using namespace bh;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

const std::vector<std::uint32_t> kCurveQs = {2, 4, 8, 16, 3, 9, 27, 5, 25, 7};

struct Outcome {
  bool pass = true;
  std::string note;
  void require(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    note += (note.empty() ? "" : "; ") + what;
  }
};

int cli(std::vector<std::string> args) {
  args.insert(args.begin(), "bh");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

Outcome defining_identity() {
  Outcome o;
  double worst = 0;
  for (auto q : kCurveQs) {
    const auto t0 = Clock::now();
    o.require(verify_on_curve(PrimePower::of(q)), "F(phi) != 0 at q=" + std::to_string(q));
    const double dt = seconds_since(t0);
    worst = std::max(worst, dt);
    o.require(dt < 1.0, "q=" + std::to_string(q) + " took " + std::to_string(dt) + " s");
  }
  o.note = o.pass ? "10 values of q, slowest " + std::to_string(worst) + " s" : o.note;
  return o;
}

Outcome node_census() {
  Outcome o;
  for (auto q : kCurveQs) {
    const BhCurve c = BhCurve::make(PrimePower::of(q));
    const auto ns = nodes(c);
    const std::string tag = "q=" + std::to_string(q);
    o.require(ns.size() == (std::size_t(q) * q - q) / 2, tag + " count " + std::to_string(ns.size()));
    for (const auto& n : ns) o.require(n.singular && n.ordinary, tag + " node " + n.tau.to_string());
    o.require(singular_parameters_certified(c), tag + " singular parameters not certified");
    if (q == 3) {
      const Field& k = c.field;
      std::set<P2Point> got, want;
      for (const auto& n : ns) got.insert(normalize_projective<3>(n.image));
      for (const auto& [a, b] : std::vector<std::pair<int, int>>{{1, 0}, {2, 1}, {2, 2}})
        want.insert({k.one(), k.from_int(a), k.from_int(b)});
      o.require(got == want, "q=3 images differ from [1:1:0], [1:2:1], [1:2:2]");
    }
    if (q == 5) o.require(ns.size() == 10, "q=5 does not have ten nodes");
  }
  if (o.pass) o.note = "(q^2-q)/2 ordinary nodes for all 10 q; q=3 images [1:1:0], [1:2:1], [1:2:2]";
  return o;
}

Outcome tangent_trichotomy() {
  Outcome o;
  const auto t0 = Clock::now();
  std::size_t checked = 0;
  for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
    const PrimePower pq = PrimePower::of(q);
    // F_{q^6} holds P^1(F_{q^3}); F_{q^4} is handled over its own field.
    for (unsigned ext : {6u, 4u}) {
      const BhCurve c = BhCurve::make(pq, ext);
      std::vector<P2Point> images;
      for (const auto& n : nodes(c)) images.push_back(n.image);
      const std::uint64_t sub = ext == 6 ? std::uint64_t(q) * q * q : c.field.order();
      for (const auto& pt : p1_points(c.field)) {
        if (!pt.is_infinity() && !subfield_test(pt.t, sub)) continue;
        const TangentReport r = tangent_report(c, pt, images);
        ++checked;
        o.require(r.ok() && r.total == static_cast<int>(q) + 1,
                  "q=" + std::to_string(q) + " P=" + pt.to_string() + " (" + to_string(r.kind) + ")");
      }
    }
  }
  const double dt = seconds_since(t0);
  o.require(dt < 30.0, "took " + std::to_string(dt) + " s");
  if (o.pass) o.note = std::to_string(checked) + " tangent lines in " + std::to_string(dt) + " s";
  return o;
}

Outcome dual_conic() {
  Outcome o;
  for (auto q : kCurveQs) o.require(dual_conic_check(PrimePower::of(q)), "q=" + std::to_string(q));
  if (o.pass) o.note = "Gauss map factors through t -> t^q onto X0*X1 = X2^2 for all 10 q";
  return o;
}

Outcome automorphisms() {
  Outcome o;
  const std::vector<std::pair<std::uint32_t, std::size_t>> cases = {{2, 6},   {3, 24},  {4, 60},  {5, 120},
                                                                    {7, 336}, {8, 504}, {9, 720}};
  double at9 = 0;
  for (const auto& [q, order] : cases) {
    const auto t0 = Clock::now();
    const GroupAudit a = group_audit(PrimePower::of(q));
    if (q == 9) at9 = seconds_since(t0);
    o.require(a.ok() && a.order == order, "q=" + std::to_string(q) + " order " + std::to_string(a.order));
  }
  o.require(at9 < 60.0, "q=9 took " + std::to_string(at9) + " s");
  if (o.pass) o.note = "orders 6, 24, 60, 120, 336, 504, 720; q=9 in " + std::to_string(at9) + " s";
  return o;
}

Outcome unirationality() {
  Outcome o;
  std::size_t pairs = 0;
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) {
    const PrimePower pq = PrimePower::of(q);
    for (int d : cover_degrees(pq)) {
      const UnirationalityReport r = unirationality_check(pq, d);
      ++pairs;
      o.require(r.telescoping, "telescoping q=" + std::to_string(q) + " d=" + std::to_string(d));
      o.require(r.ok(), "identity q=" + std::to_string(q) + " d=" + std::to_string(d));
    }
    const ProjectionReport p = projection_degree_check(pq);
    o.require(p.ok(pq) && p.total_degree == 2 * static_cast<int>(q) && p.inseparable_degree == static_cast<int>(q),
              "projection q=" + std::to_string(q));
  }
  if (o.pass) o.note = std::to_string(pairs) + " pairs (q, d); projection degree 2q with inseparable part q";
  return o;
}

Outcome fiber_splitting() {
  Outcome o;
  std::size_t lines = 0;
  for (std::uint32_t q : {3u, 5u}) {
    const PrimePower pq = PrimePower::of(q);
    for (int d : cover_degrees(pq)) {
      const CoverSpec s = build_cover(pq, d);
      for (const auto& pt : p1_points(s.curve.field)) {
        const FiberSplitting f = fiber_splitting_check(s, pt);
        ++lines;
        o.require(f.is_power && f.ok(d),
                  "q=" + std::to_string(q) + " d=" + std::to_string(d) + " P=" + pt.to_string());
      }
    }
  }
  if (o.pass) o.note = std::to_string(lines) + " restrictions c0 * m^(q+1), each splitting into d components";
  return o;
}

Outcome k3_lattices() {
  Outcome o;
  const auto t0 = Clock::now();
  for (const auto& [name, p] : std::vector<std::pair<std::string, std::uint32_t>>{{"quartic", 3}, {"sextic", 5}}) {
    const bool quartic = name == "quartic";
    const CurveConfig cfg = quartic ? quartic_config() : sextic_config();
    const GramMatrix g = gram_assemble(cfg, GramMode::Computed);
    const GramMatrix t = gram_assemble(cfg, GramMode::TableReplay);
    o.require(g.complete(), name + ": " + std::to_string(g.unavailable.size()) + " entries without witness");
    o.require(g.entries == t.entries, name + ": computed Gram differs from the reference table");
    try {
      const LatticeInvariants inv = lattice_invariants(g.entries, p);
      o.require(inv.determinant == -BigInt(p) * p, name + ": determinant " + inv.determinant.str());
      o.require(inv.artin_sigma == 1, name + ": sigma " + std::to_string(inv.artin_sigma));
      o.require(inv.positive == 1 && inv.negative == 21 && inv.zero == 0, name + ": inertia");
    } catch (const Error& e) {
      o.require(false, name + ": " + e.what());
    }
    const CurveConfig alt = quartic ? quartic_config(alternative_modulus(cfg)) : sextic_config(alternative_modulus(cfg));
    const GramMatrix ga = gram_assemble(alt, GramMode::Computed);
    o.require(ga.complete() && bareiss_determinant(ga.entries) == -BigInt(p) * p,
              name + ": determinant changes under modulus " + alt.surface.field().modulus_string());
  }
  const double dt = seconds_since(t0);
  o.require(dt < 10.0, "took " + std::to_string(dt) + " s");
  if (o.pass) o.note = "both tables reproduced; det -9 and -25; sigma 1; inertia (1,21); " + std::to_string(dt) + " s";
  return o;
}

Outcome properties_and_mutations() {
  Outcome o;
  o.require(cli({"curve", "--q", "3", "--verify", "--mutate"}) == kExitFail, "perturbed form did not exit 1");
  o.require(cli({"aut", "--q", "3", "--corrupt-lift"}) == kExitFail, "corrupted lift did not exit 1");
  o.require(cli({"unirational", "--q", "3", "--flip-sign"}) == kExitFail, "flipped sign did not exit 1");
  o.require(cli({"--seed", "1", "aut", "--q", "11", "--sample", "200"}) == kExitPass, "sampled audit q=11");
  o.require(sampled_audit(PrimePower::of(16), 200, 1).ok(), "sampled audit q=16");
  o.require(cli({"curve", "--q", "5", "--verify", "--dual-conic", "--coxeter"}) == kExitPass, "curve q=5");
  o.require(cli({"cover", "--q", "7"}) == kExitPass, "cover q=7");
  o.require(section_check(PrimePower::of(3)).ok(), "sections q=3");
  if (o.pass) o.note = "three mutations exit 1; seeded spot checks pass (module suites run under ctest)";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::function<Outcome()>> criteria = {
      defining_identity, node_census,    tangent_trichotomy, dual_conic,
      automorphisms,     unirationality, fiber_splitting,    k3_lattices, properties_and_mutations};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o.pass = false;
      o.note = std::string("exception: ") + e.what();
    }
    failures += !o.pass;
    std::cout << "Criterion " << i + 1 << ": " << (o.pass ? "PASS" : "FAIL") << " " << o.note << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
