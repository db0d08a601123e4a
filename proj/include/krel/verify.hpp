#pragma once

// Seeded corpus of boundary pairs and the invariant suite run over it.

#include "krel/generators.hpp"
#include "krel/serialize.hpp"
#include "krel/weyl.hpp"

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

namespace krel {

struct CorpusEntry {
  std::uint64_t seed = 0;
  BoundaryPair pair;
  bool unitary = false;
  Index mul_dim = 0;
};

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0,
                                 std::uint64_t c = 0) {
  return CounterRng(base, (a * 1000003ULL + b) * 1000003ULL + c).next_u64();
}

/// Deterministic pair for one corpus slot; every fourth isometric slot asks
/// for a nontrivial multivalued part.
inline CorpusEntry corpus_entry(std::uint64_t seed, Index n, Index d, std::size_t slot) {
  PairOptions options;
  options.unitary = slot % 2 == 0;
  // a strictly isometric pair with mul Γ ≠ 0 needs d >= 2
  if (!options.unitary && slot % 4 == 1 && d >= 2) options.mul_dim = 1;
  BoundaryPair pair = random_boundary_pair({n, d}, seed, options);
  const Index mul = part(pair.gamma(), Part::Multivalued).dim();
  return {seed, std::move(pair), options.unitary, mul};
}

/// `count` pairs with base dims in [1, max_in] and boundary dims in [1, max_out].
inline std::vector<CorpusEntry> make_corpus(std::uint64_t base_seed, std::size_t count,
                                            Index max_in = 4, Index max_out = 3) {
  std::vector<CorpusEntry> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    CounterRng rng(base_seed, 0xc0 + i);
    const Index n = rng.uniform_int(1, max_in);
    const Index d = rng.uniform_int(1, max_out);
    out.push_back(corpus_entry(derive_seed(base_seed, i), n, d, i));
  }
  return out;
}

inline const std::vector<Complex>& standard_grid() {
  static const std::vector<Complex> grid{{0, 1}, {0, -1}, {1, 2}, {1, -2}};
  return grid;
}

struct VerifyConfig {
  std::uint64_t seed = 1;
  std::size_t count = 1;
  Index max_dim = 2;
  double perturb = 0.0;
  double tol_scale = 0.0;
  bool json = false;
};

struct PairOutcome {
  double green = 0.0;
  double adjoint_routes = 0.0;    // krein_adjoint vs J-conjugation
  double weyl_routes = 0.0;       // three-route adjoint agreement
  double defect = 0.0;            // both sides of the defect decomposition
  double lemma = 0.0;             // O_z outside mul Γ_z^[*]
  double mul = 0.0;               // M ∩ M* vs mul Γ
  double dissipativity = 0.0;     // Im<h,h'> identity
  double symmetry = 0.0;          // unitary only
  std::vector<std::string> failures;
};

inline PairOutcome check_pair(const BoundaryPair& pair, bool expect_unitary, const Tolerance& tol,
                              const std::vector<Complex>& grid = standard_grid()) {
  PairOutcome o;
  auto fail = [&](const std::string& what) { o.failures.push_back(what); };
  o.green = green_residual(pair);
  if (!(o.green < 1e-8)) fail("green");
  const Classification c = classify(pair, tol);
  if (!c.isometric) fail("isometric");
  if (expect_unitary && !c.unitary) fail("unitary");
  o.adjoint_routes = compare(krein_adjoint(pair, tol).graph(),
                             krein_adjoint_by_conjugation(pair.spec(), pair.gamma(), tol).graph(), tol)
                         .distance;
  if (!(o.adjoint_routes < 1e-8)) fail("krein_adjoint_routes");
  for (Complex z : grid) {
    const WeylReport w = weyl_adjoint_three_ways(pair, z, tol);
    o.weyl_routes = std::max(o.weyl_routes, w.agreement.max());
    if (!w.dims_agree) fail("route_dims");
    const DefectDecomposition dd = defect_decomposition(pair, z, tol);
    o.defect = std::max(o.defect, dd.agreement.distance);
    if (!dd.agreement.equals) fail("defect_equals");
    o.lemma = std::max(o.lemma, dd.o_outside_mul_adjoint);
    if (!dd.o_in_mul_adjoint) fail("lemma_contains");
    o.mul = std::max(o.mul, mul_invariant(pair, z, tol));
    o.dissipativity = std::max(o.dissipativity, dissipativity_identity_residual(pair, z, tol));
  }
  if (!(o.weyl_routes < 1e-8)) fail("weyl_routes");
  if (!(o.defect < 1e-8)) fail("defect");
  if (!(o.lemma < 1e-8)) fail("lemma");
  if (!(o.mul < 1e-8)) fail("mul_invariant");
  if (!(o.dissipativity < 1e-10)) fail("dissipativity_identity");
  if (expect_unitary) {
    const NevanlinnaReport nr = nevanlinna_verify(pair, grid, 1e-4, tol);
    for (const NevanlinnaPoint& p : nr.points) {
      o.symmetry = std::max(o.symmetry, p.symmetry_residual);
      if (!p.dissipative) fail("dissipative");
      if (!p.maximal || p.maximal != p.maximal_by_range) fail("maximal");
    }
    if (!(o.symmetry < 1e-8)) fail("symmetry");
  }
  return o;
}

/// Adds perturb·(noise) to the boundary side of every spanning vector of Γ.
inline BoundaryPair perturb_gamma(const BoundaryPair& pair, double perturb, std::uint64_t seed) {
  if (perturb == 0.0 || pair.gamma().dim() == 0) return pair;
  CounterRng rng(seed, 0xfa);
  const LinearRelation& g = pair.gamma();
  const ComplexMatrix noisy = g.outputs() + perturb * rng.complex_matrix(g.out_dim(), g.dim());
  return {pair.spec(), make_relation(g.in_dim(), g.out_dim(), g.inputs(), noisy)};
}

struct VerifyReport {
  std::string text;
  std::size_t checked = 0;
  std::size_t failed = 0;
  std::vector<std::uint64_t> failing_seeds;
};

inline VerifyReport run_verify_core(const VerifyConfig& cfg) {
  if (cfg.count < 1) throw DomainError("verify-core: count must be >= 1");
  if (cfg.max_dim < 1 || cfg.max_dim > 6) throw DomainError("verify-core: max_dim must lie in [1, 6]");
  if (!(cfg.perturb >= 0.0)) throw DomainError("verify-core: perturbation must be >= 0");
  const Tolerance tol = Tolerance::scaled(cfg.tol_scale);
  VerifyReport report;
  std::ostringstream text;
  Json rows = Json::array();
  text << "# krel verify-core seed=" << cfg.seed << " count=" << cfg.count << " max_dim=" << cfg.max_dim
       << " perturb=" << fmt17(cfg.perturb) << " tol_scale=" << fmt17(cfg.tol_scale) << "\n";
  for (Index n = 1; n <= cfg.max_dim; ++n)
    for (Index d = 1; d <= cfg.max_dim; ++d)
      for (std::size_t i = 0; i < cfg.count; ++i) {
        const std::uint64_t seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(n),
                                               static_cast<std::uint64_t>(d), i);
        ++report.checked;
        PairOutcome o;
        bool unitary = false;
        Index mul = 0;
        try {
          CorpusEntry e = corpus_entry(seed, n, d, i);
          unitary = e.unitary;
          mul = e.mul_dim;
          o = check_pair(perturb_gamma(e.pair, cfg.perturb, seed), unitary, tol);
        } catch (const Error& ex) {
          o.failures.push_back(std::string("exception: ") + ex.what());
        }
        const bool ok = o.failures.empty();
        if (!ok) {
          ++report.failed;
          report.failing_seeds.push_back(seed);
        }
        std::string failures;
        for (const auto& f : o.failures) failures += (failures.empty() ? "" : ";") + f;
        if (cfg.json) {
          rows.push_back({{"base_dim_in", n}, {"base_dim_out", d}, {"index", i}, {"seed", seed},
                          {"kind", unitary ? "unitary" : "isometric"}, {"mul_dim", mul},
                          {"green", o.green}, {"krein_adjoint_routes", o.adjoint_routes},
                          {"weyl_routes", o.weyl_routes}, {"defect", o.defect}, {"lemma", o.lemma},
                          {"mul_invariant", o.mul}, {"dissipativity", o.dissipativity},
                          {"symmetry", o.symmetry}, {"pass", ok}, {"failures", o.failures}});
        } else {
          text << "n=" << n << " d=" << d << " i=" << i << " seed=" << seed
               << " kind=" << (unitary ? "unitary" : "isometric") << " mul=" << mul
               << " green=" << fmt17(o.green) << " routes=" << fmt17(o.weyl_routes)
               << " defect=" << fmt17(o.defect) << " lemma=" << fmt17(o.lemma)
               << " mul_inv=" << fmt17(o.mul) << " diss=" << fmt17(o.dissipativity)
               << " sym=" << fmt17(o.symmetry) << " " << (ok ? "PASS" : "FAIL " + failures) << "\n";
        }
      }
  if (cfg.json) {
    Json doc{{"seed", cfg.seed}, {"count", cfg.count}, {"max_dim", cfg.max_dim},
             {"perturb", cfg.perturb}, {"tol_scale", cfg.tol_scale}, {"pairs", std::move(rows)},
             {"checked", report.checked}, {"failed", report.failed},
             {"failing_seeds", report.failing_seeds}};
    report.text = doc.dump(2) + "\n";
  } else {
    text << "checked=" << report.checked << " failed=" << report.failed << "\n";
    for (std::uint64_t s : report.failing_seeds) text << "failing seed " << s << "\n";
    report.text = text.str();
  }
  return report;
}

}  // namespace krel
