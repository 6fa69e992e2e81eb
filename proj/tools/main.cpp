// Command-line front end: builds problems from JSON configs, runs them and
// emits machine-readable reports plus CSV dumps. Exit codes: 0 on a
// certified/passing run, 1 on a pipeline or verification failure, 2 on
// config/usage errors.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "avoidapprox/avoidapprox.hpp"
#include "avoidapprox/serialize.hpp"

namespace fs = std::filesystem;
using namespace avoidapprox;

namespace {

constexpr const char* kSchema = "avoidant-approx/1";

json load_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return json::parse(in);
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

std::string timestamp_utc() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[64];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

BoundingBox box_from_json(const json& j) {
  if (!j.is_array() || j.size() != 4)
    throw std::runtime_error("region must be [xmin, xmax, ymin, ymax]");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>()};
}

struct SetSpec {
  CompactSetSample K;
  std::vector<DiscSpec> discs;
  json echo;
};

SetSpec build_set(const json& j, std::size_t density = 1) {
  SetSpec out;
  out.echo = j;
  const std::string ctor = j.at("constructor").get<std::string>();
  if (ctor == "disc_union") {
    for (const auto& d : j.at("discs")) {
      if (!d.is_array() || d.size() != 3)
        throw std::runtime_error("disc entries must be [cx, cy, r]");
      out.discs.push_back({Complex{d[0].get<double>(), d[1].get<double>()}, d[2].get<double>()});
    }
    const auto n = j.value("samples_per_disc", std::size_t{512});
    const auto ni = j.value("interior_samples_per_disc", std::size_t{0});
    out.K = make_disc_union(out.discs, n * density, ni == 0 ? 0 : ni * density);
  } else if (ctor == "fat_cantor_product") {
    const std::string kind = j.value("kind", "S_plus_iS");
    out.K = make_fat_cantor_product(
        kind == "interval_plus_iS" ? FatCantorKind::interval_plus_iS : FatCantorKind::S_plus_iS,
        j.value("removal_ratio", 0.25), j.value("depth", std::size_t{3}),
        j.value("per_cell_samples", std::size_t{16}) * density * density);
  } else if (ctor == "arc") {
    std::vector<Complex> ctrl;
    for (const auto& p : j.at("control_points")) ctrl.push_back(complex_from_json(p));
    out.K = make_arc(ctrl, j.value("samples", std::size_t{257}) * density);
  } else {
    throw std::runtime_error("unknown set constructor: " + ctor);
  }
  return out;
}

FunctionEvaluator build_function(const json& j, const CompactSetSample& K) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "identity") return FunctionEvaluator::identity();
  if (kind == "constant") return FunctionEvaluator::constant(complex_from_json(j.at("value")));
  if (kind == "poly") return FunctionEvaluator::from_polynomial(polynomial_from_json(j.at("coeffs")));
  if (kind == "exp") {
    double extent = 1.0;
    for (Complex z : K.all_points) extent = std::max(extent, std::abs(z));
    return FunctionEvaluator::exp_builtin(
        j.contains("scale") ? complex_from_json(j.at("scale")) : Complex{1.0},
        j.contains("rate") ? complex_from_json(j.at("rate")) : Complex{1.0},
        j.contains("shift") ? complex_from_json(j.at("shift")) : Complex{},
        extent + 1.0);
  }
  if (kind == "samples") {
    const fs::path csv = j.at("csv").get<std::string>();
    std::ifstream in(csv);
    if (!in) throw std::runtime_error("cannot open sample table " + csv.string());
    std::vector<Complex> pts, vals;
    std::string line;
    std::getline(in, line);  // header: re,im,fre,fim
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      double a, b, c, d;
      if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &a, &b, &c, &d) != 4)
        throw std::runtime_error("bad sample table row: " + line);
      pts.emplace_back(a, b);
      vals.emplace_back(c, d);
    }
    return FunctionEvaluator::from_samples(std::move(pts), std::move(vals));
  }
  throw std::runtime_error("unknown function kind: " + kind);
}

ForbiddenSet build_forbidden(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "explicit") {
    std::vector<Complex> vals;
    for (const auto& v : j.at("values")) vals.push_back(complex_from_json(v));
    return explicit_set(vals);
  }
  if (kind == "gaussian_rationals")
    return gaussian_rationals(j.at("max_denominator").get<long long>(),
                              box_from_json(j.at("region")));
  if (kind == "algebraic")
    return algebraic_numbers(j.at("max_degree").get<int>(), j.at("max_height").get<int>(),
                             box_from_json(j.at("region")));
  throw std::runtime_error("unknown forbidden-set kind: " + kind);
}

json report_envelope(const json& payload, const json& config_echo, std::uint64_t seed) {
  json j;
  j["schema"] = kSchema;
  j["timestamp"] = timestamp_utc();
  j["seed"] = seed;
  j["config"] = config_echo;
  j["report"] = payload;
  return j;
}

int cmd_approximate(const fs::path& config_path, fs::path out_dir,
                    std::optional<std::uint64_t> seed_flag, bool keep_iterates_flag,
                    std::size_t dense_verify) {
  json cfg;
  try {
    cfg = load_json(config_path);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  ApproximationProblem prob;
  SetSpec set;
  std::uint64_t seed = 0;
  try {
    set = build_set(cfg.at("set"));
    prob.K = set.K;
    prob.discs = set.discs;
    prob.f = build_function(cfg.at("function"), prob.K);
    prob.A = build_forbidden(cfg.at("forbidden"));
    prob.eps = cfg.at("eps").get<double>();
    const std::string mode = cfg.value("mode", "theorem1_discs");
    if (mode == "theorem1_discs")
      prob.mode = PipelineMode::theorem1_discs;
    else if (mode == "theorem2_empty_interior")
      prob.mode = PipelineMode::theorem2_empty_interior;
    else
      throw std::runtime_error("unknown mode: " + mode);
    prob.options.max_fit_degree = cfg.value("max_fit_degree", 80);
    prob.options.keep_iterates = keep_iterates_flag || cfg.value("keep_iterates", false);
    seed = seed_flag.value_or(cfg.value("seed", std::uint64_t{0}));
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  std::error_code ec;
  fs::create_directories(out_dir, ec);

  try {
    const auto [p, rep] = run(prob);

    json payload = to_json(rep);
    if (dense_verify > 1) {
      const auto dense = build_set(cfg.at("set"), dense_verify);
      const auto v = verify_on(prob.f, p, dense.K, prob.A, prob.eps);
      json vj;
      vj["density_factor"] = dense_verify;
      vj["sup_error"] = v.sup_error;
      vj["margins"] = v.margins;
      vj["passed"] = v.ok;
      payload["dense_verification"] = vj;
      if (!v.ok) {
        write_text(out_dir / "report.json",
                   report_envelope(payload, cfg, seed).dump(2) + "\n");
        std::cerr << "dense verification failed\n";
        return 1;
      }
    }

    write_text(out_dir / "report.json", report_envelope(payload, cfg, seed).dump(2) + "\n");

    json poly_bundle;
    poly_bundle["schema"] = kSchema;
    poly_bundle["polynomial"] = to_json(p);
    poly_bundle["eps"] = prob.eps;
    poly_bundle["function"] = cfg.at("function");
    poly_bundle["set"] = cfg.at("set");
    poly_bundle["forbidden"] = cfg.at("forbidden");
    write_text(out_dir / "polynomial.json", poly_bundle.dump(2) + "\n");

    std::ofstream csv(out_dir / "samples.csv");
    write_samples_csv(csv, prob.K);

    std::cout << (rep.certified ? "certified" : "uncertified") << "; sup error "
              << rep.final_sup_error << "; " << rep.final_min_margins.size()
              << " margins, all positive\n";
    return rep.certified ? 0 : 1;
  } catch (const StageError& e) {
    json diag;
    diag["stage"] = e.stage;
    diag["error"] = e.what();
    write_text(out_dir / "report.json", report_envelope(diag, cfg, seed).dump(2) + "\n");
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    json diag;
    diag["stage"] = "unknown";
    diag["error"] = e.what();
    write_text(out_dir / "report.json", report_envelope(diag, cfg, seed).dump(2) + "\n");
    std::cerr << e.what() << "\n";
    return 1;
  }
}

int cmd_verify(const fs::path& poly_path, const fs::path& set_path, const fs::path& forb_path,
               double eps, std::size_t density) {
  json poly_bundle, set_cfg, forb_cfg;
  Polynomial p;
  try {
    poly_bundle = load_json(poly_path);
    p = polynomial_from_json(poly_bundle.contains("polynomial") ? poly_bundle.at("polynomial")
                                                                : poly_bundle);
    set_cfg = load_json(set_path);
    forb_cfg = load_json(forb_path);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  try {
    const auto set = build_set(set_cfg, density);
    const auto A = build_forbidden(forb_cfg);

    bool have_f = poly_bundle.contains("function");
    VerificationResult v;
    if (have_f) {
      const auto f = build_function(poly_bundle.at("function"), set.K);
      v = verify_on(f, p, set.K, A, eps);
    } else {
      // no function spec bundled: margins only
      v.sup_error = 0.0;
      v.sup_ok = true;
      v.margins_ok = true;
      for (Complex a : A.values) {
        const double m = min_abs_on(p, std::span<const Complex>(set.K.all_points), a);
        v.margins.push_back(m);
        v.margins_ok = v.margins_ok && m > 0.0;
      }
      v.ok = v.margins_ok;
    }

    json out;
    out["schema"] = kSchema;
    out["density_factor"] = density;
    out["sup_error"] = have_f ? json(v.sup_error) : json(nullptr);
    out["sup_ok"] = v.sup_ok;
    out["margins"] = v.margins;
    out["margins_ok"] = v.margins_ok;
    out["passed"] = v.ok;
    std::cout << out.dump(2) << "\n";
    return v.ok ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
}

int cmd_demo_obstruction(Complex a1, Complex a2, double eps, int fit_degree, fs::path out_dir) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  try {
    CurveSamples fitted;
    GammaCurve gamma;
    const auto rep = demo_obstruction(a1, a2, eps, fit_degree, 4001, &fitted, &gamma);

    json j = to_json(rep);
    j["schema"] = kSchema;
    write_text(out_dir / "obstruction.json", j.dump(2) + "\n");
    {
      std::ofstream os(out_dir / "gamma.csv");
      write_curve_csv(os, gamma.arc);
    }
    {
      std::ofstream os(out_dir / "fitted.csv");
      write_curve_csv(os, fitted);
    }
    std::cout << (rep.obstructed ? "obstructed" : "not obstructed") << "; winding difference "
              << rep.winding_difference << "; min distance to segment "
              << rep.min_distance_to_segment << "\n";
    return 0;
  } catch (const ObstructionError& e) {
    std::cerr << e.what() << "\n";
    return 2;  // parameter/usage problems (eps guard, degree too low)
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"value-avoiding polynomial approximation on sampled compact sets"};
  app.require_subcommand(1);

  std::string config_path, out_dir = "out";
  std::uint64_t seed = 0;
  bool seed_set = false, keep_iterates = false;
  std::size_t dense_verify = 1;

  auto* approx = app.add_subcommand("approximate", "run the full pipeline from a config");
  approx->add_option("--config", config_path, "run config JSON")->required();
  approx->add_option("--out", out_dir, "output directory");
  approx->add_option("--seed", seed, "seed recorded in the report")->each([&](const std::string&) {
    seed_set = true;
  });
  approx->add_flag("--keep-iterates", keep_iterates, "retain intermediate polynomials");
  approx->add_option("--dense-verify", dense_verify, "re-verify at this density multiple");

  std::string poly_path, set_path, forb_path;
  double eps = 0.0;
  auto* verify = app.add_subcommand("verify", "re-measure a polynomial against denser meshes");
  verify->add_option("--polynomial", poly_path, "polynomial JSON (bundle or bare array)")
      ->required();
  verify->add_option("--set", set_path, "set constructor config JSON")->required();
  verify->add_option("--forbidden", forb_path, "forbidden-set config JSON")->required();
  verify->add_option("--eps", eps, "target sup error")->required();
  verify->add_option("--dense-verify", dense_verify, "density multiple");

  std::vector<double> a1{0.5, 0.0}, a2{2.2, 0.0};
  double demo_eps = 0.01;
  int fit_degree = 60;
  auto* demo = app.add_subcommand("demo-obstruction", "winding-number obstruction demo");
  demo->add_option("--a1", a1, "first value (re im)")->expected(2);
  demo->add_option("--a2", a2, "second value (re im)")->expected(2);
  demo->add_option("--eps", demo_eps, "tracking accuracy");
  demo->add_option("--fit-degree", fit_degree, "max fit degree");
  demo->add_option("--out", out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (approx->parsed())
    return cmd_approximate(config_path, out_dir,
                           seed_set ? std::optional<std::uint64_t>(seed) : std::nullopt,
                           keep_iterates, dense_verify);
  if (verify->parsed()) return cmd_verify(poly_path, set_path, forb_path, eps, dense_verify);
  if (demo->parsed())
    return cmd_demo_obstruction(Complex{a1[0], a1[1]}, Complex{a2[0], a2[1]}, demo_eps,
                                fit_degree, out_dir);
  return 2;
}
