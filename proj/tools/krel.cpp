// krel: command-line driver for the relation calculus.
//
//   krel verify-core   --seed S --count C --max-dim D [--perturb-gamma e]
//   krel weyl          --pair pair.json --grid "i,1+2i" [--format csv|json]
//   krel model-converge [--model model.json] --levels 50,100 [--grid i]
//   krel classify      --pair pair.json
//   krel generate      --seed S --base-in n --base-out d [--isometric] [--mul k]
//
// Exit codes: 0 all checks passed, 1 some check failed, 2 usage or input error.

#include "krel/krel.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace krel;

struct Common {
  std::uint64_t seed = 1;
  double tol_scale = 0.0;
  std::string out;
  std::string format = "csv";
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw DomainError("cannot parse '" + path + "': " + e.what());
  }
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw UsageError("cannot write '" + c.out + "'");
  f << text;
}

std::vector<Index> parse_levels(const std::string& text) {
  std::vector<Index> levels;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      levels.push_back(std::stol(tok));
    } catch (const std::exception&) {
      throw UsageError("bad level '" + tok + "'");
    }
  }
  if (levels.empty()) throw UsageError("--levels is empty");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (levels[i] < 1) throw UsageError("levels must be >= 1");
    if (i && levels[i] <= levels[i - 1]) throw UsageError("levels must be strictly increasing");
  }
  return levels;
}

int cmd_verify(const Common& c, std::size_t count, Index max_dim, double perturb) {
  if (count < 1) throw UsageError("--count must be >= 1");
  if (max_dim < 1 || max_dim > 6) throw UsageError("--max-dim must lie in [1, 6]");
  VerifyConfig cfg{c.seed, count, max_dim, perturb, c.tol_scale, c.format == "json"};
  const VerifyReport r = run_verify_core(cfg);
  emit(c, r.text);
  if (r.failed) {
    for (std::uint64_t s : r.failing_seeds) std::cerr << "verify-core: failing seed " << s << "\n";
    return 1;
  }
  return 0;
}

int cmd_weyl(const Common& c, const std::string& pair_path, const std::string& grid_text, double fd_step) {
  const Tolerance tol = Tolerance::scaled(c.tol_scale);
  const BoundaryPair pair = pair_from_json(read_json(pair_path), tol);
  const std::vector<Complex> grid = parse_grid(grid_text);
  const Classification cls = classify(pair, tol);
  if (!cls.isometric) {
    std::cerr << "weyl: Γ is not isometric; refusing\n" << to_json(cls).dump(2) << "\n";
    return 1;
  }
  const NevanlinnaReport nr = nevanlinna_verify(pair, grid, fd_step, tol);
  bool ok = true;
  for (const auto& p : nr.points)
    if (cls.unitary && (!p.dissipative || !p.maximal || p.symmetry_residual >= 1e-8)) ok = false;

  if (c.format == "json") {
    Json points = Json::array();
    for (std::size_t i = 0; i < grid.size(); ++i) {
      Json j = to_json(nr.points[i]);
      j["report"] = to_json(weyl_adjoint_three_ways(pair, grid[i], tol));
      points.push_back(std::move(j));
    }
    Json doc{{"seed", c.seed}, {"classification", to_json(cls)}, {"points", std::move(points)}};
    emit(c, doc.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "# krel weyl seed=" << c.seed << " pair=" << pair_path << "\n";
    os << "re_z,im_z,dim_M,dissipative,maximal,symmetry_residual,mul_residual,cr_residual\n";
    for (const auto& p : nr.points)
      os << CsvWriter::join({CsvWriter::cell(p.z.real()), CsvWriter::cell(p.z.imag()),
                             CsvWriter::cell(p.dim_m), CsvWriter::cell(p.dissipative),
                             CsvWriter::cell(p.maximal), CsvWriter::cell(p.symmetry_residual),
                             CsvWriter::cell(p.mul_residual), CsvWriter::cell(p.cr_residual)})
         << "\n";
    emit(c, os.str());
  }
  return ok ? 0 : 1;
}

int cmd_model(const Common& c, const std::string& model_path, const std::string& levels_text,
              const std::string& grid_text, std::size_t samples) {
  const ModelSpec spec = model_path.empty() ? ModelSpec{} : model_from_json(read_json(model_path));
  const std::vector<Index> levels = parse_levels(levels_text);
  const std::vector<Complex> grid = parse_grid(grid_text, false);
  const bool drift = levels.size() > 1;
  bool ok = true;
  // the regular part of dom K is a finite decaying span standing in for the smooth domain
  const std::string surrogate = "decaying-span surrogate, " + std::to_string(spec.regular_per_sigma) +
                                " vectors per sigma";
  Json doc{{"seed", c.seed}, {"model", to_json(spec)}, {"regular_domain", surrogate}, {"rows", Json::array()}};
  std::ostringstream os;
  os << "# krel model-converge seed=" << c.seed << " model=" << (model_path.empty() ? "desk" : model_path)
     << " regular_domain=" << surrogate << "\n";
  std::vector<std::string> cols{"N", "re_z", "im_z", "weyl_vs_r_residual"};
  if (drift) cols.push_back("r_drift");
  for (const char* s : {"green_residual", "im_r_residual", "boundary_form_residual", "dom_full"})
    cols.emplace_back(s);
  os << CsvWriter::join(cols) << "\n";
  for (Complex z : grid) {
    for (const WeylRow& r : weyl_vs_r(spec, z, levels, samples, c.seed)) {
      if (!r.dom_full || !(r.residual < 1e-7) || !(r.green < 1e-8) || !(r.im_r < 1e-12) ||
          !(r.boundary_form < 1e-8))
        ok = false;
      std::vector<std::string> cells{CsvWriter::cell(r.n), CsvWriter::cell(r.z.real()),
                                     CsvWriter::cell(r.z.imag()), CsvWriter::cell(r.residual)};
      if (drift) cells.push_back(CsvWriter::cell(r.drift));
      cells.push_back(CsvWriter::cell(r.green));
      cells.push_back(CsvWriter::cell(r.im_r));
      cells.push_back(CsvWriter::cell(r.boundary_form));
      cells.push_back(CsvWriter::cell(r.dom_full));
      os << CsvWriter::join(cells) << "\n";
      Json row{{"N", r.n}, {"z", to_json(r.z)}, {"probe", to_json(r.probe)},
               {"weyl_vs_r_residual", r.residual}};
      if (drift) row["r_drift"] = r.drift ? Json(*r.drift) : Json(nullptr);
      row["green_residual"] = r.green;
      row["im_r_residual"] = r.im_r;
      row["boundary_form_residual"] = r.boundary_form;
      row["dom_full"] = r.dom_full;
      row["ran_full"] = r.ran_full;
      doc["rows"].push_back(std::move(row));
    }
  }
  emit(c, c.format == "json" ? doc.dump(2) + "\n" : os.str());
  return ok ? 0 : 1;
}

int cmd_classify(const Common& c, const std::string& pair_path) {
  const Tolerance tol = Tolerance::scaled(c.tol_scale);
  const BoundaryPair pair = pair_from_json(read_json(pair_path), tol);
  Json doc = to_json(classify(pair, tol));
  doc["seed"] = c.seed;
  emit(c, doc.dump(2) + "\n");
  return 0;
}

int cmd_generate(const Common& c, Index n, Index d, bool isometric, int mul) {
  PairOptions o;
  o.unitary = !isometric;
  o.mul_dim = mul;
  emit(c, to_json(random_boundary_pair({n, d}, c.seed, o)).dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Linear relations, Krein-space boundary pairs and Weyl families"};
  app.require_subcommand(1);
  Common common;
  if (const char* env = std::getenv("KREL_TOL_SCALE")) {
    try {
      common.tol_scale = std::stod(env);
    } catch (const std::exception&) {
      std::cerr << "KREL_TOL_SCALE is not a number\n";
      return 2;
    }
  }
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", common.seed, "random seed");
    sub->add_option("--tol-scale", common.tol_scale, "rank tolerance multiplier (0 = default)");
    sub->add_option("--out", common.out, "output path (default stdout)");
    sub->add_option("--format", common.format)->check(CLI::IsMember({"csv", "json"}));
  };

  std::size_t count = 1;
  Index max_dim = 2;
  double perturb = 0.0;
  auto* verify = app.add_subcommand("verify-core", "run the invariant suite on seeded random pairs");
  add_common(verify);
  verify->add_option("--count", count, "pairs per dimension combination");
  verify->add_option("--max-dim", max_dim, "largest base and boundary dimension (<= 6)");
  verify->add_option("--perturb-gamma", perturb, "add noise of this size to Γ (fault injection)");

  std::string pair_path, grid_text = "i", model_path, levels_text = "50,100";
  double fd_step = 1e-3;
  std::size_t samples = 20;
  auto* weyl = app.add_subcommand("weyl", "Weyl family diagnostics over a grid");
  add_common(weyl);
  weyl->add_option("--pair", pair_path, "boundary pair JSON")->required();
  weyl->add_option("--grid", grid_text, "explicit list or rect:re0:re1:im0:im1:step")->required();
  weyl->add_option("--fd-step", fd_step, "finite-difference step for the analyticity check");

  auto* model = app.add_subcommand("model-converge", "truncation sweep of the perturbation model");
  add_common(model);
  model->add_option("--model", model_path, "model JSON (default: desk model)");
  model->add_option("--levels", levels_text, "increasing truncation levels");
  model->add_option("--grid", grid_text, "spectral points");
  model->add_option("--samples", samples, "dom K samples for the boundary form check");

  auto* cls = app.add_subcommand("classify", "classify a relation read from JSON");
  add_common(cls);
  cls->add_option("--pair", pair_path, "boundary pair JSON")->required();

  Index base_in = 2, base_out = 1;
  bool isometric = false;
  int mul = -1;
  auto* gen = app.add_subcommand("generate", "write a random boundary pair as JSON");
  add_common(gen);
  gen->add_option("--base-in", base_in);
  gen->add_option("--base-out", base_out);
  gen->add_flag("--isometric", isometric, "isometric rather than unitary");
  gen->add_option("--mul", mul, "dimension of mul Γ");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  try {
    if (common.tol_scale < 0.0) throw UsageError("--tol-scale must be >= 0");
    if (*verify) return cmd_verify(common, count, max_dim, perturb);
    if (*weyl) return cmd_weyl(common, pair_path, grid_text, fd_step);
    if (*model) return cmd_model(common, model_path, levels_text, grid_text, samples);
    if (*cls) return cmd_classify(common, pair_path);
    if (*gen) return cmd_generate(common, base_in, base_out, isometric, mul);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
