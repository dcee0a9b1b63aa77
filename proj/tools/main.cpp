#include "CLI11.hpp"
#include "json.hpp"

#include "thermalwp/manybody.hpp"
#include "thermalwp/plane_waves.hpp"
#include "thermalwp/sampler.hpp"
#include "thermalwp/selftest.hpp"
#include "thermalwp/version.hpp"

#include <cstdio>
#include <deque>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace thermalwp;
using ordered_json = nlohmann::ordered_json;

// Reduced convention of the front end: lambda = 1, i.e. beta = 1/(2 pi),
// hbar = m = kB = 1. All lengths are multiples of lambda (or lambda_s where a
// figure says so) and all times multiples of beta hbar.
const ThermalParams kReduced(1.0 / (2.0 * kPi), 1.0);

// SI presentation is anchored to the argon-at-300-K worked example: lengths
// leave in angstrom, inverse volumes in 1/angstrom^3, times in seconds.
struct SiScales {
  double length_angstrom;
  double time_seconds;
};

SiScales argon_scales() {
  const double hbar = 1.054571817e-34;
  const double kb = 1.380649e-23;
  const ThermalParams argon(1.0 / (kb * 300.0), 39.948 * 1.66053906660e-27, hbar, kb);
  return {thermal_wavelength(argon) * 1e10, argon.beta * argon.hbar};
}

enum class Dim { none, length, inv_volume, time };

struct Column {
  std::string name;     // reduced-units name
  std::string si_name;  // name when values are scaled to SI
  Dim dim = Dim::none;
  std::vector<double> values;
};

struct Table {
  std::deque<Column> columns;  // stable references across add()

  Column& add(const std::string& name, const std::string& si_name, Dim dim) {
    columns.push_back({name, si_name, dim, {}});
    return columns.back();
  }
  Column& add(const std::string& name) { return add(name, name, Dim::none); }
};

struct OutputConfig {
  bool si = false;
  bool json = false;
  ordered_json meta;  // recorded in JSON output only
};

double dim_scale(Dim dim, bool si) {
  if (!si || dim == Dim::none) return 1.0;
  const SiScales s = argon_scales();
  switch (dim) {
    case Dim::length:
      return s.length_angstrom;
    case Dim::inv_volume:
      return 1.0 / (s.length_angstrom * s.length_angstrom * s.length_angstrom);
    case Dim::time:
      return s.time_seconds;
    default:
      return 1.0;
  }
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

void write_table(std::ostream& os, const Table& t, const OutputConfig& cfg) {
  if (t.columns.empty()) return;
  const std::size_t rows = t.columns.front().values.size();
  for (const Column& c : t.columns)
    if (c.values.size() != rows) throw std::logic_error("table columns of unequal length");
  if (cfg.json) {
    ordered_json j;
    j["meta"] = cfg.meta;
    for (const Column& c : t.columns) {
      ordered_json arr = ordered_json::array();
      const double scale = dim_scale(c.dim, cfg.si);
      for (double v : c.values) arr.push_back(v * scale);
      j[cfg.si && c.dim != Dim::none ? c.si_name : c.name] = arr;
    }
    os << j.dump(2) << '\n';
    return;
  }
  for (std::size_t i = 0; i < t.columns.size(); ++i)
    os << (i ? "," : "")
       << (cfg.si && t.columns[i].dim != Dim::none ? t.columns[i].si_name : t.columns[i].name);
  os << '\n';
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t i = 0; i < t.columns.size(); ++i)
      os << (i ? "," : "") << fmt(t.columns[i].values[r] * dim_scale(t.columns[i].dim, cfg.si));
    os << '\n';
  }
}

void emit(const Table& t, const OutputConfig& cfg, const std::string& out_path) {
  if (out_path.empty()) {
    write_table(std::cout, t, cfg);
    return;
  }
  std::ofstream os(out_path);
  if (!os) throw std::runtime_error("cannot open output file: " + out_path);
  write_table(os, t, cfg);
  if (!os) throw std::runtime_error("failed while writing: " + out_path);
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n));
  if (n == 1) {
    out.push_back(lo);
    return out;
  }
  for (int i = 0; i < n; ++i)
    out.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));
  return out;
}

// --- fig2: two-particle coordinate representation on a collinear grid -------

void run_fig2(double r1, double r2, int grid, const OutputConfig& cfg, const std::string& out) {
  const double ls = thermal_wavelength(kReduced);  // undivided split
  const std::vector<WavePacket> packets{WavePacket(r1 * ls * Vec3::UnitX(), Vec3::Zero(), ls),
                                        WavePacket(r2 * ls * Vec3::UnitX(), Vec3::Zero(), ls)};
  const PacketSet fermions(packets, Statistics::Fermion);
  const PacketSet bosons(packets, Statistics::Boson);
  const double lo = std::min(r1, r2) - 2.5;
  const double hi = std::max(r1, r2) + 2.5;
  const std::vector<double> axis = linspace(lo, hi, grid);
  Table t;
  Column& cR = t.add("R_over_lambda_s", "R_angstrom", Dim::length);
  Column& cRp = t.add("Rp_over_lambda_s", "Rp_angstrom", Dim::length);
  Column& cfr = t.add("fermion_re", "fermion_re_per_angstrom3", Dim::inv_volume);
  Column& cfi = t.add("fermion_im", "fermion_im_per_angstrom3", Dim::inv_volume);
  Column& cbr = t.add("boson_re", "boson_re_per_angstrom3", Dim::inv_volume);
  Column& cbi = t.add("boson_im", "boson_im_per_angstrom3", Dim::inv_volume);
  for (double R : axis)
    for (double Rp : axis) {
      const Vec3 a = R * ls * Vec3::UnitX();
      const Vec3 b = Rp * ls * Vec3::UnitX();
      const cplx f = coord_rep_2(fermions, a, b);
      const cplx bo = coord_rep_2(bosons, a, b);
      cR.values.push_back(R);
      cRp.values.push_back(Rp);
      cfr.values.push_back(f.real());
      cfi.values.push_back(f.imag());
      cbr.values.push_back(bo.real());
      cbi.values.push_back(bo.imag());
    }
  emit(t, cfg, out);
}

// --- fig3: single-packet correlation vs time, plus the thermal panel --------

std::string sibling_path(const std::string& out, const std::string& tag) {
  const std::filesystem::path p(out);
  std::filesystem::path s = p.parent_path();
  s /= p.stem().string() + tag + p.extension().string();
  return s.string();
}

void run_fig3(double lambda_p_over_hbar, int grid, int t_points, const OutputConfig& cfg,
              const std::string& out) {
  if (out.empty())
    throw std::runtime_error("fig3 writes two files; --out is required (the second gets a "
                             "_thermal suffix)");
  const double ls = thermal_wavelength(kReduced);
  const double bh = kReduced.beta * kReduced.hbar;
  const WavePacket wp(Vec3::Zero(),
                      Vec3(lambda_p_over_hbar * kReduced.hbar / ls, 0.0, 0.0), ls);
  const std::vector<double> axis = linspace(-3.0, 3.0, grid);
  const std::vector<double> times = linspace(0.0, 1.0, t_points);
  Table t;
  Column& c1 = t.add("R1_over_lambda_s", "R1_angstrom", Dim::length);
  Column& c2 = t.add("R2_over_lambda_s", "R2_angstrom", Dim::length);
  Column& cb = t.add("b1", "t1_seconds", Dim::time);
  Column& ca = t.add("packet_g1_abs", "packet_g1_abs_per_angstrom3", Dim::inv_volume);
  for (double b : times)
    for (double R1 : axis)
      for (double R2 : axis) {
        const SpacetimePoint x1(R1 * ls * Vec3::UnitX(), b * bh);
        const SpacetimePoint x2(R2 * ls * Vec3::UnitX(), 0.0);
        c1.values.push_back(R1);
        c2.values.push_back(R2);
        cb.values.push_back(b);
        ca.values.push_back(std::abs(packet_g1(wp, x1, x2, kReduced)));
      }
  emit(t, cfg, out);

  // thermal panel: separation dependence of the closed form, unit volume
  Table th;
  Column& cdr = th.add("dR_over_lambda", "dR_angstrom", Dim::length);
  Column& cdb = th.add("db", "dt_seconds", Dim::time);
  Column& cta = th.add("thermal_g1_abs_times_V");
  const std::vector<double> seps = linspace(0.0, 3.0, grid);
  for (double db : times)
    for (double dR : seps) {
      const SpacetimePoint x1(dR * Vec3::UnitX(), db * bh);
      const SpacetimePoint x2(Vec3::Zero(), 0.0);
      cdr.values.push_back(dR);
      cdb.values.push_back(db);
      cta.values.push_back(std::abs(thermal_g1_single(x1, x2, kReduced, 1.0)));
    }
  emit(th, cfg, sibling_path(out, "_thermal"));
}

// --- fig4: two-packet correlation profiles vs separation --------------------

void run_fig4(const std::vector<double>& separations, int grid, const OutputConfig& cfg,
              const std::string& out) {
  if (separations.empty()) throw std::runtime_error("fig4 needs at least one separation");
  const double ls = thermal_wavelength(kReduced);
  double max_sep = 0.0;
  for (double s : separations) max_sep = std::max(max_sep, std::abs(s));
  const std::vector<double> axis = linspace(-(max_sep / 2.0 + 3.0), max_sep / 2.0 + 3.0, grid);
  Table t;
  Column& cs = t.add("separation_over_lambda", "separation_angstrom", Dim::length);
  Column& cR = t.add("R_over_lambda", "R_angstrom", Dim::length);
  Column& cfr = t.add("fermion_re", "fermion_re_per_angstrom3", Dim::inv_volume);
  Column& cbr = t.add("boson_re", "boson_re_per_angstrom3", Dim::inv_volume);
  Column& cfn = t.add("fermion_normalized_re", "fermion_normalized_re_per_angstrom3",
                      Dim::inv_volume);
  Column& cbn = t.add("boson_normalized_re", "boson_normalized_re_per_angstrom3",
                      Dim::inv_volume);
  for (double sep : separations) {
    const std::vector<WavePacket> packets{
        WavePacket(-0.5 * sep * ls * Vec3::UnitX(), Vec3::Zero(), ls),
        WavePacket(0.5 * sep * ls * Vec3::UnitX(), Vec3::Zero(), ls)};
    const PacketSet fermions(packets, Statistics::Fermion);
    const PacketSet bosons(packets, Statistics::Boson);
    const double nf = state_norm(fermions);
    const double nb = state_norm(bosons);
    for (double R : axis) {
      const SpacetimePoint x(R * ls * Vec3::UnitX(), 0.0);
      // coincident points at equal times: the correlation is real
      const double f = two_packet_g1(fermions, x, x, kReduced).real();
      const double b = two_packet_g1(bosons, x, x, kReduced).real();
      cs.values.push_back(sep);
      cR.values.push_back(R);
      cfr.values.push_back(f);
      cbr.values.push_back(b);
      // a degenerate fermion pair has norm zero; the normalized profile is
      // undefined there and emitted as nan (null in JSON)
      cfn.values.push_back(nf > 0.0 ? f / nf : std::numeric_limits<double>::quiet_NaN());
      cbn.values.push_back(b / nb);
    }
  }
  emit(t, cfg, out);
}

// --- partition ---------------------------------------------------------------

void run_partition(int n, double v_over_lambda3, Statistics stats, const std::string& mode,
                   double ts, std::uint64_t n_samples, std::uint64_t seed, int threads,
                   const OutputConfig& cfg, const std::string& out) {
  if (v_over_lambda3 < 100.0)
    std::cerr << "warning: closed-form partition values assume the dilute regime; "
                 "V/lambda^3 = "
              << v_over_lambda3 << " is below 100\n";
  const double volume = v_over_lambda3;  // lambda = 1
  Table t;
  Column& cn = t.add("n");
  Column& cv = t.add("v_over_lambda3");
  Column& ce = t.add("estimate");
  Column& cs = t.add("std_error");
  Column& cx = t.add("exact");
  const double exact = n <= 2
                           ? partition_exact(n, volume, kReduced, stats)
                           : std::numeric_limits<double>::quiet_NaN();
  cn.values.push_back(n);
  cv.values.push_back(v_over_lambda3);
  if (mode == "exact") {
    if (n > 2)
      throw std::domain_error("partition: exact mode has closed forms for n in {1, 2} only");
    ce.values.push_back(exact);
    cs.values.push_back(0.0);
  } else {
    const WidthSplit split = split_width(kReduced, ts);
    const McEstimate mc =
        partition_mc(n, volume, split, stats, RngStream(seed, 0), n_samples, threads);
    ce.values.push_back(mc.value);
    cs.values.push_back(mc.std_error);
  }
  cx.values.push_back(exact);
  emit(t, cfg, out);
}

// --- g1: one separation, every route ----------------------------------------

void run_g1(double dr, double db, double v_over_lambda3, double ts, std::uint64_t n_samples,
            int n_cutoff, const std::string& route, std::uint64_t seed, int threads,
            const OutputConfig& cfg, const std::string& out) {
  const double bh = kReduced.beta * kReduced.hbar;
  const SpacetimePoint x1(dr * Vec3::UnitX(), db * bh);
  const SpacetimePoint x2(Vec3::Zero(), 0.0);
  const double volume = v_over_lambda3;  // lambda = 1
  const bool all = route == "all";
  Table t;
  t.add("dR_over_lambda").values.push_back(dr);
  t.add("db").values.push_back(db);
  if (all || route == "closed") {
    const cplx g = thermal_g1_single(x1, x2, kReduced, volume);
    t.add("closed_re").values.push_back(g.real());
    t.add("closed_im").values.push_back(g.imag());
  }
  if (all || route == "eigenstate") {
    const double box = std::cbrt(volume);
    const cplx g = eigenstate_g1(PlaneWaveBasis(box, n_cutoff), kReduced,
                                 x1.position - x2.position, x2.time - x1.time);
    t.add("eigenstate_re").values.push_back(g.real());
    t.add("eigenstate_im").values.push_back(g.imag());
  }
  if (all || route == "mc") {
    const WidthSplit split = split_width(kReduced, ts);
    const McEstimateC g = mc_thermal_g1(x1, x2, kReduced, volume, split, n_samples,
                                        RngStream(seed, 0), threads);
    t.add("mc_re").values.push_back(g.value.real());
    t.add("mc_im").values.push_back(g.value.imag());
    t.add("mc_std_error").values.push_back(g.std_error);
  }
  emit(t, cfg, out);
}

// --- sample: raw draws from the decomposition measure ------------------------

void run_sample(int n, double box_side, double ts, int count, std::uint64_t seed,
                const OutputConfig& cfg, const std::string& out) {
  const WidthSplit split = split_width(kReduced, ts);
  const RngStream rng(seed, 0);
  Table t;
  Column& ci = t.add("sample_index");
  Column& cp = t.add("particle");
  Column* pos[3] = {&t.add("x_over_lambda", "x_angstrom", Dim::length),
                    &t.add("y_over_lambda", "y_angstrom", Dim::length),
                    &t.add("z_over_lambda", "z_angstrom", Dim::length)};
  Column* mom[3] = {&t.add("px"), &t.add("py"), &t.add("pz")};
  for (int index = 0; index < count; ++index) {
    const PacketEnsembleSample s =
        sample_ensemble(n, box_side, split, rng, static_cast<std::uint64_t>(index));
    for (int particle = 0; particle < n; ++particle) {
      const ParticleDraw& d = s.draws[static_cast<std::size_t>(particle)];
      ci.values.push_back(index);
      cp.values.push_back(particle);
      for (int a = 0; a < 3; ++a) {
        pos[a]->values.push_back(d.position[a]);
        mom[a]->values.push_back(d.momentum[a]);
      }
    }
  }
  emit(t, cfg, out);
}

// --- units: the argon worked example -----------------------------------------

void run_units(const std::string& element, double temperature_k,
               std::optional<double> ts_kelvin) {
  if (element != "argon") throw std::runtime_error("unknown element: " + element);
  const double hbar = 1.054571817e-34;
  const double kb = 1.380649e-23;
  if (!(temperature_k > 0.0)) throw std::domain_error("temperature must be positive");
  const ThermalParams params(1.0 / (kb * temperature_k), 39.948 * 1.66053906660e-27, hbar, kb);
  const double lambda = thermal_wavelength(params);
  const double t_s = ts_kelvin.value_or(temperature_k);
  if (!(t_s > 0.0) || t_s > temperature_k)
    throw std::domain_error("T_s must lie in (0, T]");
  const double ls = split_width(params, t_s / temperature_k).lambda_s;
  std::cout << "argon at " << fmt(temperature_k) << " K\n"
            << "  lambda          = " << fmt(lambda * 1e10) << " A\n"
            << "  packet T_s      = " << fmt(t_s) << " K\n"
            << "  lambda_s        = " << fmt(ls * 1e10) << " A\n"
            << "  packet fwhm     = " << fmt(packet_fwhm(ls) * 1e10) << " A\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wave-packet decomposition of free thermal gases: figures, estimators, checks"};
  app.require_subcommand(1);

  std::string units = "reduced";
  std::string format = "csv";
  std::string out_path;
  std::uint64_t seed = 0;
  int threads = 1;
  app.add_option("--units", units, "unit system for emitted values")
      ->check(CLI::IsMember({"reduced", "SI"}));
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", out_path, "output file (default: stdout)");
  app.add_option("--seed", seed, "random seed for Monte Carlo commands");
  app.add_option("--threads", threads, "worker threads for Monte Carlo commands")
      ->check(CLI::PositiveNumber);

  // fig2
  auto* fig2 = app.add_subcommand("fig2", "two-particle coordinate representation on a grid");
  fig2->fallthrough();
  double f2_r1 = 1.0, f2_r2 = 0.5;
  int f2_grid = 64;
  fig2->add_option("--r1", f2_r1, "first packet center, units of lambda_s");
  fig2->add_option("--r2", f2_r2, "second packet center, units of lambda_s");
  fig2->add_option("--grid", f2_grid, "points per axis")->check(CLI::Range(16, 4096));

  // fig3
  auto* fig3 = app.add_subcommand(
      "fig3", "single-packet correlation vs time, with the thermal closed-form panel");
  fig3->fallthrough();
  double f3_p = 0.0;
  int f3_grid = 64, f3_t = 5;
  fig3->add_option("--lambda-p-over-hbar", f3_p, "packet momentum, units of hbar/lambda_s");
  fig3->add_option("--grid", f3_grid, "points per spatial axis")->check(CLI::Range(16, 4096));
  fig3->add_option("--t-points", f3_t, "number of time slices in [0, beta hbar]")
      ->check(CLI::Range(1, 4096));

  // fig4
  auto* fig4 = app.add_subcommand("fig4", "two-packet correlation profiles vs separation");
  fig4->fallthrough();
  std::vector<double> f4_seps{0.0, 1.0, 3.0};
  int f4_grid = 64;
  fig4->add_option("--separations", f4_seps, "packet separations, units of lambda")
      ->delimiter(',');
  fig4->add_option("--grid", f4_grid, "points along the section")->check(CLI::Range(16, 4096));

  // partition
  auto* partition = app.add_subcommand("partition", "canonical partition function");
  partition->fallthrough();
  int pa_n = 2;
  double pa_v = 1000.0, pa_ts = 0.5;
  std::string pa_stats = "fermion", pa_mode = "exact";
  std::uint64_t pa_samples = 1000000;
  partition->add_option("--n", pa_n, "particle number")->check(CLI::Range(1, 8));
  partition->add_option("--v-over-lambda3", pa_v, "box volume in units of lambda^3")
      ->check(CLI::PositiveNumber);
  partition->add_option("--statistics", pa_stats, "exchange statistics")
      ->check(CLI::IsMember({"fermion", "boson"}));
  partition->add_option("--mode", pa_mode, "closed form or Monte Carlo")
      ->check(CLI::IsMember({"exact", "mc"}));
  partition->add_option("--ts", pa_ts, "width fraction T_s/T for the MC decomposition")
      ->check(CLI::Range(1e-6, 1.0));
  partition->add_option("--samples", pa_samples, "Monte Carlo sample count");

  // g1
  auto* g1 = app.add_subcommand(
      "g1", "thermal first-order correlation at one separation, by every route");
  g1->fallthrough();
  double g1_dr = 0.5, g1_db = 0.5, g1_v = 1000.0, g1_ts = 0.5;
  std::uint64_t g1_samples = 100000;
  int g1_nc = 40;
  std::string g1_route = "all";
  g1->add_option("--dr", g1_dr, "spatial separation, units of lambda");
  g1->add_option("--db", g1_db, "time separation, units of beta hbar");
  g1->add_option("--v-over-lambda3", g1_v, "box volume in units of lambda^3")
      ->check(CLI::PositiveNumber);
  g1->add_option("--ts", g1_ts, "width fraction T_s/T for the MC decomposition")
      ->check(CLI::Range(1e-6, 1.0));
  g1->add_option("--samples", g1_samples, "Monte Carlo sample count");
  g1->add_option("--nc", g1_nc, "plane-wave cutoff per axis")->check(CLI::PositiveNumber);
  g1->add_option("--route", g1_route, "which evaluation routes to emit")
      ->check(CLI::IsMember({"closed", "eigenstate", "mc", "all"}));

  // sample
  auto* sample = app.add_subcommand("sample", "raw draws from the decomposition measure");
  sample->fallthrough();
  int sa_n = 2, sa_count = 5;
  double sa_box = 10.0, sa_ts = 0.5;
  sample->add_option("--n", sa_n, "particles per draw")->check(CLI::Range(1, 64));
  sample->add_option("--box-side", sa_box, "box side, units of lambda")
      ->check(CLI::PositiveNumber);
  sample->add_option("--ts", sa_ts, "width fraction T_s/T")->check(CLI::Range(1e-6, 1.0));
  sample->add_option("--count", sa_count, "number of ensemble draws")
      ->check(CLI::Range(1, 1000000));

  // units
  auto* units_cmd = app.add_subcommand("units", "thermal length scales in angstrom");
  units_cmd->fallthrough();
  std::string un_element = "argon";
  double un_temp = 300.0;
  std::optional<double> un_ts;
  double un_ts_value = 0.0;
  units_cmd->add_option("--element", un_element, "species (argon)");
  units_cmd->add_option("--temperature-K", un_temp, "gas temperature in kelvin");
  auto* ts_opt = units_cmd->add_option("--ts-kelvin", un_ts_value,
                                       "packet temperature T_s in kelvin (default: T)");

  // selftest
  auto* selftest = app.add_subcommand("selftest", "run the full acceptance suite");
  selftest->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    OutputConfig cfg;
    cfg.si = units == "SI";
    cfg.json = format == "json";
    cfg.meta = {{"version", kVersion}, {"units", units},   {"format", format},
                {"seed", seed},        {"threads", threads}};
    if (cfg.si) {
      const SiScales s = argon_scales();
      cfg.meta["length_scale_angstrom"] = s.length_angstrom;
      cfg.meta["time_scale_seconds"] = s.time_seconds;
    }
    if (*fig2) {
      cfg.meta["command"] = "fig2";
      cfg.meta["r1"] = f2_r1;
      cfg.meta["r2"] = f2_r2;
      cfg.meta["grid"] = f2_grid;
      run_fig2(f2_r1, f2_r2, f2_grid, cfg, out_path);
    } else if (*fig3) {
      cfg.meta["command"] = "fig3";
      cfg.meta["lambda_p_over_hbar"] = f3_p;
      cfg.meta["grid"] = f3_grid;
      cfg.meta["t_points"] = f3_t;
      run_fig3(f3_p, f3_grid, f3_t, cfg, out_path);
    } else if (*fig4) {
      cfg.meta["command"] = "fig4";
      cfg.meta["separations"] = f4_seps;
      cfg.meta["grid"] = f4_grid;
      run_fig4(f4_seps, f4_grid, cfg, out_path);
    } else if (*partition) {
      cfg.meta["command"] = "partition";
      cfg.meta["n"] = pa_n;
      cfg.meta["v_over_lambda3"] = pa_v;
      cfg.meta["statistics"] = pa_stats;
      cfg.meta["mode"] = pa_mode;
      cfg.meta["ts"] = pa_ts;
      cfg.meta["samples"] = pa_samples;
      const Statistics stats =
          pa_stats == "fermion" ? Statistics::Fermion : Statistics::Boson;
      run_partition(pa_n, pa_v, stats, pa_mode, pa_ts, pa_samples, seed, threads, cfg, out_path);
    } else if (*g1) {
      cfg.meta["command"] = "g1";
      cfg.meta["dr"] = g1_dr;
      cfg.meta["db"] = g1_db;
      cfg.meta["v_over_lambda3"] = g1_v;
      cfg.meta["ts"] = g1_ts;
      cfg.meta["samples"] = g1_samples;
      cfg.meta["nc"] = g1_nc;
      cfg.meta["route"] = g1_route;
      run_g1(g1_dr, g1_db, g1_v, g1_ts, g1_samples, g1_nc, g1_route, seed, threads, cfg,
             out_path);
    } else if (*sample) {
      cfg.meta["command"] = "sample";
      cfg.meta["n"] = sa_n;
      cfg.meta["box_side"] = sa_box;
      cfg.meta["ts"] = sa_ts;
      cfg.meta["count"] = sa_count;
      run_sample(sa_n, sa_box, sa_ts, sa_count, seed, cfg, out_path);
    } else if (*units_cmd) {
      if (ts_opt->count() > 0) un_ts = un_ts_value;
      run_units(un_element, un_temp, un_ts);
    } else if (*selftest) {
      return run_selftest(seed, threads, std::cout);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
