#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "nlc/config.hpp"
#include "nlc/curvature.hpp"
#include "nlc/grid_io.hpp"
#include "nlc/moving_planes.hpp"
#include "nlc/parallel.hpp"
#include "nlc/rigidity.hpp"

namespace fs = std::filesystem;
using namespace nlc;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct Flags {
  std::string config;
  std::optional<std::string> out;
  std::optional<double> spacing;
  std::optional<std::uint64_t> seed;
  std::optional<int> dirs;
  std::optional<unsigned> threads;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

RunConfig resolve(const Flags& flags) {
  RunConfig cfg = load_config(flags.config);
  if (flags.out) cfg.out = *flags.out;
  if (flags.spacing) {
    if (!(*flags.spacing > 0.0)) throw ConfigError("--spacing must be positive");
    cfg.spacing = *flags.spacing;
  }
  if (flags.seed) {
    cfg.nondegeneracy.seed = *flags.seed;
    cfg.rigidity.nondegeneracy.seed = *flags.seed;
  }
  if (flags.dirs) {
    if (*flags.dirs < 1) throw ConfigError("--dirs must be at least 1");
    cfg.dirs = *flags.dirs;
  }
  if (flags.threads) cfg.threads = *flags.threads;
  if (cfg.threads != 0) set_thread_count(cfg.threads);
  fs::create_directories(cfg.out);
  return cfg;
}

RadialKernel need_kernel(const RunConfig& cfg) {
  if (!cfg.has_kernel) throw ConfigError("config has no [kernel] section");
  return cfg.kernel.build();
}

std::ofstream open_out(const RunConfig& cfg, const std::string& name) {
  const fs::path path = cfg.out / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

int kernel_info(const RunConfig& cfg) {
  const RadialKernel k = need_kernel(cfg);
  const bool compact = k.bounded();
  std::cout << "kind " << to_string(k.family()) << ", d = " << k.dimension() << '\n';
  const double reach = compact ? k.support_radius() : 4.0;
  std::cout << "t,phi\n";
  for (int i = 0; i <= 16; ++i) {
    const double t = reach * i / 16.0;
    std::cout << num(t) << ',' << num(k.eval(t)) << '\n';
  }
  // Levels: uniform on [0, ess sup] for bounded profiles, log-spaced otherwise.
  auto out = open_out(cfg, "kernel.csv");
  out << "s,r_of_s\n";
  std::cout << "s,r_of_s\n";
  for (int i = 0; i <= 64; ++i) {
    const double s = compact ? k.ess_sup() * i / 64.0 : std::pow(10.0, -3.0 + 6.0 * i / 64.0);
    const std::string row = num(s) + ',' + num(k.distribution(s)) + '\n';
    out << row;
    std::cout << row;
  }
  const IntegrabilityCheck integ = k.improved_integrability();
  std::cout << "eta = " << num(k.plateau_eta()) << '\n'
            << "r(0) = " << num(k.support_radius()) << '\n'
            << "improved integrability: " << (integ.converges ? "yes" : "no") << ", tail = " << num(integ.tail)
            << (integ.numeric ? " (numeric)" : "") << '\n';
  return kPass;
}

int set_build(const RunConfig& cfg) {
  const IndicatorGrid set = build_set(cfg);
  save_grid((cfg.out / "set.nlgrid").string(), set);
  std::cout << "cells " << set.occupied_count() << " of " << set.cell_count() << ", measure " << num(measure(set));
  if (!set.empty()) std::cout << ", diameter " << num(diameter(set));
  std::cout << ", boundary samples " << boundary_cells(set).size() << '\n';
  return kPass;
}

int criticality(const RunConfig& cfg) {
  const RadialKernel k = need_kernel(cfg);
  const IndicatorGrid set = build_set(cfg);
  const MassField field(set, k, cfg.mass);
  const CriticalityReport r = criticality_report(field);
  auto out = open_out(cfg, "criticality.csv");
  write_criticality_csv(out, r);
  std::cout << "samples " << r.samples() << ", mean " << num(r.mean) << ", max deviation " << num(r.max_deviation)
            << '\n';
  return kPass;
}

int nondeg(const RunConfig& cfg) {
  const RadialKernel k = need_kernel(cfg);
  const IndicatorGrid set = build_set(cfg);
  const MassField field(set, k, cfg.mass);
  const NondegeneracyResult r = nondegeneracy_infimum(field, cfg.nondegeneracy);
  auto out = open_out(cfg, "nondeg.csv");
  write_nondeg_csv(out, r);
  const double floor = nondegeneracy_floor(set, k);
  std::cout << "infimum " << num(r.value) << " over " << r.pairs_evaluated << (r.exhaustive ? " (all pairs)" : " pairs")
            << ", floor " << num(floor) << ", minimizer distance " << num(r.minimizer.distance) << '\n';
  return kPass;
}

int sweep(const RunConfig& cfg) {
  const RadialKernel k = need_kernel(cfg);
  const IndicatorGrid set = build_set(cfg);
  const int dim = set.dimension();
  const auto dirs = sweep_directions(dim, cfg.dirs);
  auto summary = open_out(cfg, "sweeps.csv");
  summary << "index";
  for (int i = 1; i <= dim; ++i) summary << ",nu" << i;
  summary << ",T,status,nonsymmetric_measure,components,away_contacts,close_contacts\n";
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    const SweepReport r = stopping_time(set, dirs[i], cfg.sweep);
    const Decomposition d = decompose(set, r, k, cfg.sweep);
    char name[32];
    if (dirs.size() == 1) {
      std::snprintf(name, sizeof name, "sweep.csv");
    } else {
      std::snprintf(name, sizeof name, "sweep_%02zu.csv", i);
    }
    auto out = open_out(cfg, name);
    write_sweep_csv(out, r);
    summary << i;
    for (int c = 0; c < dim; ++c) summary << ',' << num(r.direction[c]);
    summary << ',' << num(r.T) << ',' << to_string(r.status) << ',' << num(measure(d.nonsymmetric)) << ','
            << d.components.count() << ',' << r.away_contacts.size() << ',' << r.close_contacts.size() << '\n';
    std::cout << "direction " << i << ": T = " << num(r.T) << " (" << to_string(r.status) << "), Omega^ns "
              << num(measure(d.nonsymmetric)) << ", components " << d.components.count() << '\n';
  }
  return kPass;
}

int verify(const RunConfig& cfg) {
  const RadialKernel k = need_kernel(cfg);
  const IndicatorGrid set = build_set(cfg);
  const RigidityReport r = extract_balls(set, k, cfg.rigidity);
  auto out = open_out(cfg, "rigidity.json");
  write_rigidity_json(out, r);
  std::cout << "verdict: " << to_string(r.verdict) << ", balls " << r.balls.size() << '\n';
  for (const auto& b : r.balls) std::cout << "  radius " << num(b.radius) << '\n';
  for (const auto& why : r.reasons) std::cerr << why << '\n';
  switch (r.verdict) {
    case Verdict::pass: return kPass;
    case Verdict::fail: return kFail;
    case Verdict::not_applicable: return kUsage;
  }
  return kUsage;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nonlocal h-perimeter, h-curvature and moving-planes diagnostics on indicator grids"};
  app.require_subcommand(1);
  Flags flags;
  int (*run)(const RunConfig&) = nullptr;

  auto add = [&](const char* name, const char* help, int (*fn)(const RunConfig&)) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", flags.config, "Config file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", flags.out, "Output directory");
    sub->add_option("--spacing", flags.spacing, "Grid spacing for generated sets");
    sub->add_option("--seed", flags.seed, "Pair sampling seed");
    sub->add_option("--dirs", flags.dirs, "Sweep fan size");
    sub->add_option("--threads", flags.threads, "Worker threads (0 = hardware)");
    sub->callback([&run, fn] { run = fn; });
  };
  add("kernel-info", "Profile, distribution function, eta, r(0) and integrability", kernel_info);
  add("set-build", "Rasterize the configured set to set.nlgrid", set_build);
  add("criticality", "Local masses on the boundary (criticality.csv)", criticality);
  add("nondeg", "Nondegeneracy infimum (nondeg.csv)", nondeg);
  add("sweep", "Moving-planes sweeps (sweep.csv)", sweep);
  add("verify", "Ball extraction and bounds (rigidity.json)", verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }
  try {
    return run(resolve(flags));
  } catch (const std::exception& e) {
    std::cerr << "nlcurv: " << e.what() << '\n';
    return kUsage;
  }
}
