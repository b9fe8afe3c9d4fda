// mppc command line tool: dataset generation, fitting, closed-form
// predictions, and SVG plots, all through the public C API.
//
// Exit codes: 0 success, 1 validation error, 2 non-convergence (result
// still written), 3 I/O error.

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mppc/mppc.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNonConvergence = 2;
constexpr int kExitIo = 3;

int exit_code_for(mppc_status s) {
  switch (s) {
    case MPPC_OK:
      return kExitOk;
    case MPPC_ERR_IO:
      return kExitIo;
    default:
      return kExitValidation;
  }
}

int report_error(mppc_status s) {
  std::fprintf(stderr, "error: %s\n", mppc_last_error_message());
  return exit_code_for(s);
}

struct FitArgs {
  std::string input;
  std::string weights_col;
  std::optional<double> lambda1, lambda2, alpha_star, hstar, rho;
  bool ppc_only = false;
  bool fix_endpoints = false;
  bool no_normalize = false;
  std::uint64_t seed = 0;
  int max_iter = 2000;
  int threads = 0;
  std::string init = "singletons";
  std::string output;
  std::string svg;
};

int run_fit(const FitArgs& a) {
  mppc_params params = mppc_params_default();
  if (a.alpha_star) {
    mppc_status s;
    if (a.hstar) {
      s = mppc_oracle_select_params(*a.alpha_star, *a.hstar, &params.lambda1,
                                    &params.lambda2);
    } else if (a.lambda2) {
      params.lambda2 = *a.lambda2;
      s = mppc_oracle_lambda1_from_lambda2(*a.alpha_star, *a.lambda2,
                                           &params.lambda1);
    } else {
      std::fprintf(stderr,
                   "error: --alpha-star needs --hstar or --lambda2\n");
      return kExitValidation;
    }
    if (s != MPPC_OK) return report_error(s);
  } else if (a.lambda1 && a.lambda2) {
    params.lambda1 = *a.lambda1;
    params.lambda2 = *a.lambda2;
  } else {
    std::fprintf(stderr,
                 "error: provide --lambda1 and --lambda2, or --alpha-star\n");
    return kExitValidation;
  }
  if (a.rho) params.rho = *a.rho;
  params.ppc_only = a.ppc_only ? 1 : 0;
  params.fix_endpoints = a.fix_endpoints ? 1 : 0;
  params.seed = a.seed;
  params.max_outer_iters = a.max_iter;
  params.threads = a.threads;

  mppc_cloud* cloud = nullptr;
  mppc_status s = mppc_cloud_load_csv(
      a.input.c_str(), -1, a.weights_col.empty() ? nullptr : a.weights_col.c_str(),
      a.no_normalize ? 0 : 1, &cloud);
  if (s != MPPC_OK) return report_error(s);

  mppc_curves* initial = nullptr;
  mppc_result* init_result = nullptr;
  if (a.init != "singletons") {
    if (a.init.rfind("file:", 0) != 0) {
      std::fprintf(stderr, "error: --init must be 'singletons' or "
                           "'file:PATH'\n");
      mppc_cloud_free(cloud);
      return kExitValidation;
    }
    s = mppc_result_load(a.init.substr(5).c_str(), &init_result);
    if (s != MPPC_OK) {
      mppc_cloud_free(cloud);
      return report_error(s);
    }
    initial = const_cast<mppc_curves*>(mppc_result_curves(init_result));
  }

  mppc_result* result = nullptr;
  s = mppc_fit(cloud, &params, initial, &result);
  if (init_result) mppc_result_free(init_result);
  if (s != MPPC_OK) {
    mppc_cloud_free(cloud);
    return report_error(s);
  }

  double energy[4];
  mppc_result_energy(result, energy);
  const mppc_curves* curves = mppc_result_curves(result);
  std::printf("components: %d\n", mppc_curves_component_count(curves));
  std::printf("iterations: %d\n", mppc_result_iterations(result));
  std::printf("converged:  %s\n",
              mppc_result_converged(result) ? "yes" : "no");
  std::printf("energy:     %.12g (fidelity %.12g, length %.12g, "
              "components %.12g)\n",
              energy[3], energy[0], energy[1], energy[2]);

  int rc = kExitOk;
  if (!a.output.empty()) {
    s = mppc_result_save(result, a.output.c_str());
    if (s != MPPC_OK) rc = report_error(s);
  }
  if (rc == kExitOk && !a.svg.empty()) {
    s = mppc_render_svg(cloud, curves, a.svg.c_str(),
                        mppc_cloud_dim(cloud) > 2 ? "pca2" : "first2", 0);
    if (s != MPPC_OK) rc = report_error(s);
  }
  if (rc == kExitOk && !mppc_result_converged(result))
    rc = kExitNonConvergence;

  mppc_result_free(result);
  mppc_cloud_free(cloud);
  return rc;
}

struct GenerateArgs {
  std::string kind;
  std::optional<std::int64_t> n, nx, ny;
  std::optional<double> noise, length, height, t0, t1, x0, x1;
  std::uint64_t seed = 0;
  std::string output;
};

int run_generate(const GenerateArgs& a) {
  std::string opts = "{";
  bool first = true;
  auto add = [&](const char* key, const std::string& value) {
    if (!first) opts += ",";
    first = false;
    opts += "\"";
    opts += key;
    opts += "\":";
    opts += value;
  };
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  };
  auto inum = [&](std::int64_t v) {
    std::snprintf(buf, sizeof(buf), "%" PRId64, v);
    return std::string(buf);
  };
  if (a.n) add("n", inum(*a.n));
  if (a.nx) add("nx", inum(*a.nx));
  if (a.ny) add("ny", inum(*a.ny));
  if (a.noise) add("noise", num(*a.noise));
  if (a.length) add("length", num(*a.length));
  if (a.height) add("height", num(*a.height));
  if (a.t0) add("t0", num(*a.t0));
  if (a.t1) add("t1", num(*a.t1));
  if (a.x0) add("x0", num(*a.x0));
  if (a.x1) add("x1", num(*a.x1));
  opts += "}";

  mppc_cloud* cloud = nullptr;
  mppc_status s =
      mppc_cloud_generate(a.kind.c_str(), opts.c_str(), a.seed, &cloud);
  if (s != MPPC_OK) return report_error(s);
  s = mppc_cloud_save_csv(cloud, a.output.c_str());
  std::printf("wrote %" PRId64 " points (d = %d) to %s\n",
              mppc_cloud_size(cloud), mppc_cloud_dim(cloud),
              a.output.c_str());
  mppc_cloud_free(cloud);
  return s == MPPC_OK ? kExitOk : report_error(s);
}

struct PlotArgs {
  std::string input, result, output;
  std::string proj = "first2";
  std::string weights_col;
};

int run_plot(const PlotArgs& a) {
  mppc_cloud* cloud = nullptr;
  mppc_status s = mppc_cloud_load_csv(
      a.input.c_str(), -1,
      a.weights_col.empty() ? nullptr : a.weights_col.c_str(), 1, &cloud);
  if (s != MPPC_OK) return report_error(s);
  mppc_result* result = nullptr;
  s = mppc_result_load(a.result.c_str(), &result);
  if (s != MPPC_OK) {
    mppc_cloud_free(cloud);
    return report_error(s);
  }
  s = mppc_render_svg(cloud, mppc_result_curves(result), a.output.c_str(),
                      a.proj.c_str(), 0);
  mppc_result_free(result);
  mppc_cloud_free(cloud);
  return s == MPPC_OK ? kExitOk : report_error(s);
}

void print_value(const char* name, double v) {
  std::printf("%s = %.12g\n", name, v);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multiple penalized principal curves"};
  app.require_subcommand(1);

  // fit
  FitArgs fa;
  CLI::App* fit = app.add_subcommand("fit", "fit curves to a CSV cloud");
  fit->add_option("--input", fa.input, "input CSV")->required();
  fit->add_option("--weights-col", fa.weights_col, "weight column name");
  fit->add_option("--lambda1", fa.lambda1, "length weight");
  fit->add_option("--lambda2", fa.lambda2, "component weight");
  fit->add_option("--alpha-star", fa.alpha_star, "critical linear density");
  fit->add_option("--hstar", fa.hstar, "desired resolution");
  fit->add_flag("--ppc-only", fa.ppc_only, "disable topology changes");
  fit->add_flag("--fix-endpoints", fa.fix_endpoints, "pin curve endpoints");
  fit->add_option("--rho", fa.rho, "ADMM penalty");
  fit->add_option("--seed", fa.seed, "random seed");
  fit->add_option("--max-iter", fa.max_iter, "outer iteration cap");
  fit->add_option("--init", fa.init, "singletons | file:PATH");
  fit->add_option("--output", fa.output, "result JSON path")->required();
  fit->add_option("--svg", fa.svg, "also render an SVG");
  fit->add_flag("--no-normalize", fa.no_normalize,
                "keep weights as loaded instead of rescaling to mass 1");
  fit->add_option("--threads", fa.threads, "worker threads (0 = all)");

  // generate
  GenerateArgs ga;
  CLI::App* gen = app.add_subcommand("generate", "write a synthetic dataset");
  gen->add_option("kind", ga.kind,
                  "spiral | rectangle | segment | oscillation | "
                  "parallel_lines | grid_clutter")
      ->required();
  gen->add_option("--n", ga.n, "point count");
  gen->add_option("--nx", ga.nx, "grid columns (rectangle)");
  gen->add_option("--ny", ga.ny, "grid rows (rectangle)");
  gen->add_option("--noise", ga.noise, "noise scale");
  gen->add_option("--length", ga.length, "segment / rectangle length");
  gen->add_option("--height", ga.height, "rectangle / line height");
  gen->add_option("--t0", ga.t0, "spiral parameter start");
  gen->add_option("--t1", ga.t1, "spiral parameter end");
  gen->add_option("--x0", ga.x0, "oscillation range start");
  gen->add_option("--x1", ga.x1, "oscillation range end");
  gen->add_option("--seed", ga.seed, "random seed");
  gen->add_option("--output", ga.output, "output CSV")->required();

  // oracle
  CLI::App* oracle = app.add_subcommand("oracle", "closed-form predictions");
  oracle->require_subcommand(1);
  double o_l1 = 0, o_l2 = 0, o_alpha = 0, o_H = 0, o_kappa = 0, o_p = 2,
         o_L = 0, o_astar = 0, o_hstar = 0;

  CLI::App* sm = oracle->add_subcommand("smoothing", "sqrt(l1 / (2 a))");
  sm->add_option("--lambda1", o_l1)->required();
  sm->add_option("--alpha", o_alpha)->required();

  CLI::App* pd = oracle->add_subcommand("projection-distance",
                                        "bias of a curved fit");
  pd->add_option("--curvature", o_kappa)->required();
  pd->add_option("--lambda1", o_l1)->required();
  pd->add_option("--alpha", o_alpha)->required();

  CLI::App* cl = oracle->add_subcommand("critical-lambda1",
                                        "stability threshold 2 a H^2");
  cl->add_option("--alpha", o_alpha)->required();
  cl->add_option("--H", o_H)->required();

  CLI::App* cd = oracle->add_subcommand("critical-density",
                                        "breakup density threshold");
  cd->add_option("--lambda1", o_l1)->required();
  cd->add_option("--lambda2", o_l2)->required();
  cd->add_option("--p", o_p);

  CLI::App* gp = oracle->add_subcommand("gap", "typical gap of breakup");
  gp->add_option("--lambda1", o_l1)->required();
  gp->add_option("--lambda2", o_l2)->required();
  gp->add_option("--alpha", o_alpha)->required();
  gp->add_option("--p", o_p);

  CLI::App* sg = oracle->add_subcommand("segment-minimizer",
                                        "uniform-segment minimizer");
  sg->add_option("--L", o_L)->required();
  sg->add_option("--alpha", o_alpha)->required();
  sg->add_option("--lambda1", o_l1)->required();
  sg->add_option("--lambda2", o_l2)->required();
  sg->add_option("--p", o_p);

  CLI::App* sp = oracle->add_subcommand("select-params",
                                        "lambda1, lambda2 from targets");
  sp->add_option("--alpha-star", o_astar)->required();
  sp->add_option("--hstar", o_hstar);
  sp->add_option("--lambda2", o_l2);

  // plot
  PlotArgs pa;
  CLI::App* plot = app.add_subcommand("plot", "render a result to SVG");
  plot->add_option("--input", pa.input, "input CSV")->required();
  plot->add_option("--result", pa.result, "result JSON")->required();
  plot->add_option("--output", pa.output, "output SVG")->required();
  plot->add_option("--proj", pa.proj, "first2 | pca2");
  plot->add_option("--weights-col", pa.weights_col, "weight column name");

  CLI11_PARSE(app, argc, argv);

  if (fit->parsed()) return run_fit(fa);
  if (gen->parsed()) return run_generate(ga);
  if (plot->parsed()) return run_plot(pa);

  if (oracle->parsed()) {
    mppc_status s = MPPC_OK;
    double out = 0;
    if (sm->parsed()) {
      s = mppc_oracle_smoothing_length(o_l1, o_alpha, &out);
      if (s == MPPC_OK) print_value("smoothing_length", out);
    } else if (pd->parsed()) {
      s = mppc_oracle_projection_distance(o_kappa, o_l1, o_alpha, &out);
      if (s == MPPC_OK) print_value("projection_distance", out);
    } else if (cl->parsed()) {
      s = mppc_oracle_critical_lambda1(o_alpha, o_H, &out);
      if (s == MPPC_OK) print_value("critical_lambda1", out);
    } else if (cd->parsed()) {
      s = mppc_oracle_critical_density(o_l1, o_l2, o_p, &out);
      if (s == MPPC_OK) print_value("critical_density", out);
    } else if (gp->parsed()) {
      s = mppc_oracle_typical_gap(o_l1, o_l2, o_alpha, o_p, &out);
      if (s == MPPC_OK) print_value("typical_gap", out);
    } else if (sg->parsed()) {
      int64_t comps = 0;
      double piece = 0, gap = 0, energy = 0;
      s = mppc_oracle_segment_minimizer(o_L, o_alpha, o_l1, o_l2, o_p,
                                        &comps, &piece, &gap, &energy);
      if (s == MPPC_OK) {
        std::printf("components = %" PRId64 "\n", comps);
        print_value("piece_length", piece);
        print_value("gap", gap);
        print_value("energy", energy);
      }
    } else if (sp->parsed()) {
      double l1 = 0, l2 = 0;
      if (o_hstar > 0) {
        s = mppc_oracle_select_params(o_astar, o_hstar, &l1, &l2);
      } else if (o_l2 > 0) {
        l2 = o_l2;
        s = mppc_oracle_lambda1_from_lambda2(o_astar, o_l2, &l1);
      } else {
        std::fprintf(stderr, "error: provide --hstar or --lambda2\n");
        return kExitValidation;
      }
      if (s == MPPC_OK) {
        print_value("lambda1", l1);
        print_value("lambda2", l2);
      }
    }
    if (s != MPPC_OK) return report_error(s);
    return kExitOk;
  }
  return kExitValidation;
}
