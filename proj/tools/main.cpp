// Pipeline driver: ground-state preparation, adaptive real-time dynamics,
// Green's function assembly, spectra, measurement emulation, mitigation and
// resource reports for the open Hubbard chain.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qgf/artifacts.hpp"
#include "qgf/avqds.hpp"
#include "qgf/avqite.hpp"
#include "qgf/exact.hpp"
#include "qgf/greens.hpp"
#include "qgf/hubbard.hpp"
#include "qgf/mitigation.hpp"
#include "qgf/pade.hpp"
#include "qgf/resources.hpp"
#include "qgf/shots.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace qgf;

namespace {

json default_config() {
  return json{
      {"n_sites", 4},
      {"t", 1.0},
      {"u", 4.0},
      {"half_filling", true},
      {"mu", 0.0},  // used only when half_filling is false
      {"dt", 0.01},
      {"total_time", 10.0},
      {"l2_cut", 1e-3},
      {"tikhonov_lambda", 1e-6},
      {"max_params", 200},
      {"ite", json{{"threshold", 1e-4}, {"dtau", 0.01}, {"max_tau", 12.0}}},
      {"zeta", 0.5},
      {"omega", json{{"min", -12.0}, {"max", 12.0}, {"step", 0.01}}},
      {"shots", 100000},
      {"shot_stride", 5},
      {"shot_pair", json{{"p", 0}, {"q", 0}}},
      {"noise", json{{"p01", 0.02}, {"p10", 0.02}}},
      {"k2", json{{"min", 0.0}, {"max", 4.0}, {"step", 0.1}}},
      {"epsilon", 1e-4},
      {"smoothing", json{{"window", 9}, {"polyorder", 3}}},
      {"seed", 12345},
  };
}

struct Context {
  json cfg;
  fs::path out;

  HubbardSpec spec() const {
    HubbardSpec s;
    s.n_sites = cfg.at("n_sites").get<int>();
    s.t = cfg.at("t").get<double>();
    s.u = cfg.at("u").get<double>();
    s.mu = cfg.at("half_filling").get<bool>() ? s.u / 2.0 : cfg.at("mu").get<double>();
    return s;
  }
  QubitLayout layout() const { return QubitLayout(spec().n_sites); }
  std::uint64_t seed() const { return cfg.at("seed").get<std::uint64_t>(); }

  fs::path ground_state_path() const { return out / "ground_state.json"; }
  fs::path trajectory_path(int p, int q) const {
    return out / ("trajectory_p" + std::to_string(p) + "_q" + std::to_string(q) +
                  ".json");
  }
  fs::path greens_pair_path(int p, int q) const {
    return out / ("greens_greater_p" + std::to_string(p) + "_q" + std::to_string(q) +
                  ".csv");
  }
  fs::path greens_momentum_path(int m) const {
    return out / ("greens_retarded_k" + std::to_string(m) + ".csv");
  }
  fs::path histograms_path(int p, int q) const {
    return out / ("histograms_p" + std::to_string(p) + "_q" + std::to_string(q) +
                  ".json");
  }

  void require(const fs::path& path, const std::string& producer) const {
    if (!fs::exists(path)) {
      throw std::runtime_error("missing artifact " + path.string() + "; run the '" +
                               producer + "' stage first");
    }
  }
};

std::vector<double> omega_grid(const json& cfg) {
  const auto& w = cfg.at("omega");
  return linspace_step(w.at("min").get<double>(), w.at("max").get<double>(),
                       w.at("step").get<double>());
}

std::vector<double> k2_grid(const json& cfg) {
  const auto& k = cfg.at("k2");
  return linspace_step(k.at("min").get<double>(), k.at("max").get<double>(),
                       k.at("step").get<double>());
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// ground-state

GroundStateArtifact run_ground_state(const Context& ctx) {
  const HubbardSpec spec = ctx.spec();
  const QubitLayout layout = ctx.layout();
  const PauliSum h = build_hamiltonian(spec, layout);
  const GroundState exact = ground_state(h, layout, Sector{spec.n_sites, 0});

  IteConfig config;
  const auto& ite = ctx.cfg.at("ite");
  config.distance_threshold = ite.at("threshold").get<double>();
  config.dtau = ite.at("dtau").get<double>();
  config.max_tau = ite.at("max_tau").get<double>();
  config.tikhonov_lambda = ctx.cfg.at("tikhonov_lambda").get<double>();
  config.max_params = ctx.cfg.at("max_params").get<int>();

  const IteResult result =
      run_avqite(h, segregated_product_state(layout), build_qubit_adapt_pool(layout),
                 config, &exact.state);

  GroundStateArtifact artifact;
  artifact.n_sites = spec.n_sites;
  artifact.t = spec.t;
  artifact.u = spec.u;
  artifact.mu = spec.mu;
  for (const auto& g : result.ansatz.generators) {
    artifact.generators.push_back(g.tokens());
  }
  artifact.angles = result.ansatz.angles;
  artifact.energy_variational = result.energy;
  artifact.energy_exact = exact.energy;
  artifact.identity_coeff = h.identity_coeff().real();
  artifact.e_phase = exact.energy;
  artifact.infidelity = result.infidelities.back();
  save_ground_state(artifact, ctx.ground_state_path().string());

  write_real_series_csv((ctx.out / "avqite_history.csv").string(), "tau", result.taus,
                        {{"energy", &result.energies},
                         {"infidelity", &result.infidelities},
                         {"distance", &result.distances}});

  std::cout << "ground state: E_var=" << fmt(result.energy)
            << " E_exact=" << fmt(exact.energy)
            << " infidelity=" << fmt(artifact.infidelity)
            << " n_params=" << result.ansatz.size() << "\n";
  return artifact;
}

// ---------------------------------------------------------------------------
// dynamics

std::vector<std::pair<int, int>> pair_list(int n_sites) {
  std::vector<std::pair<int, int>> pairs;
  for (int p = 0; p < n_sites; ++p) {
    for (int q = p; q < n_sites; ++q) pairs.emplace_back(p, q);
  }
  return pairs;
}

void run_pair_dynamics(const Context& ctx, const GroundStateArtifact& gs_art, int p,
                       int q, bool with_delta) {
  const HubbardSpec spec = ctx.spec();
  const QubitLayout layout = ctx.layout();
  const PauliSum h = build_hamiltonian(spec, layout);
  const GroundState gs = ground_state(h, layout, Sector{spec.n_sites, 0});

  const BranchSet branch_p =
      make_branch_set(jw_creation(p, Spin::Up, layout),
                      "cdag site=" + std::to_string(p) + " spin=up");
  const BranchSet branch_q =
      make_branch_set(jw_creation(q, Spin::Up, layout),
                      "cdag site=" + std::to_string(q) + " spin=up");
  const BranchState bra = prepare_branch_state(gs.state, branch_p);
  const BranchState ket = prepare_branch_state(gs.state, branch_q);

  DynConfig config;
  config.l2_cut = ctx.cfg.at("l2_cut").get<double>();
  config.dt = ctx.cfg.at("dt").get<double>();
  config.total_time = ctx.cfg.at("total_time").get<double>();
  config.tikhonov_lambda = ctx.cfg.at("tikhonov_lambda").get<double>();
  config.max_params = ctx.cfg.at("max_params").get<int>();

  ExactFlow flow;
  std::optional<ExactPropagator> prop;
  if (with_delta) {
    prop.emplace(h);
    flow = [&prop](const Statevector& s, double t) { return prop->propagate(s, t); };
  }

  Trajectory traj =
      evolve(ket.state, h, build_dynamics_pool(h, branch_p, branch_q), config, flow);
  traj.p = p;
  traj.q = q;
  traj.branch_norm_p = bra.norm;
  traj.branch_norm_q = ket.norm;
  traj.e_phase = gs_art.e_phase;
  save_trajectory(traj, ctx.trajectory_path(p, q).string());

  const CnotBound bound = cnot_upper_bound(
      Ansatz{traj.generators, std::vector<double>(traj.generators.size(), 0.0)});
  std::cout << "dynamics p=" << p << " q=" << q
            << ": n_params=" << traj.generators.size()
            << " cnot_bound=" << bound.unitary;
  if (!traj.delta.empty()) {
    double dmax = 0;
    for (const double d : traj.delta) dmax = std::max(dmax, d);
    std::cout << " max_delta=" << fmt(dmax);
  }
  std::cout << "\n";
}

void run_dynamics(const Context& ctx, bool with_delta) {
  ctx.require(ctx.ground_state_path(), "ground-state");
  const GroundStateArtifact gs_art =
      load_ground_state(ctx.ground_state_path().string());
  for (const auto& [p, q] : pair_list(ctx.spec().n_sites)) {
    run_pair_dynamics(ctx, gs_art, p, q, with_delta);
  }
}

// ---------------------------------------------------------------------------
// greens

void run_greens(const Context& ctx) {
  const HubbardSpec spec = ctx.spec();
  if (!spec.particle_hole_symmetric()) {
    throw std::runtime_error(
        "greens stage uses the particle-hole shortcut for the lesser function "
        "and requires mu = U/2");
  }
  const QubitLayout layout = ctx.layout();
  const PauliSum h = build_hamiltonian(spec, layout);
  const GroundState gs = ground_state(h, layout, Sector{spec.n_sites, 0});
  ctx.require(ctx.ground_state_path(), "ground-state");
  const GroundStateArtifact gs_art =
      load_ground_state(ctx.ground_state_path().string());

  const int n = spec.n_sites;
  std::vector<std::vector<GreensSeries>> retarded_pairs(n,
                                                        std::vector<GreensSeries>(n));
  std::vector<double> times;

  for (const auto& [p, q] : pair_list(n)) {
    ctx.require(ctx.trajectory_path(p, q), "dynamics");
    const Trajectory traj = load_trajectory(ctx.trajectory_path(p, q).string());
    const BranchSet branch_p = make_branch_set(jw_creation(p, Spin::Up, layout), "p");
    const BranchSet branch_q = make_branch_set(jw_creation(q, Spin::Up, layout), "q");
    const auto gtilde = gtilde_series(traj, gs.state, branch_p, branch_q);
    const GreensSeries greater = g_greater(traj.times, gtilde, gs_art.e_phase, p, q);
    const GreensSeries lesser = g_lesser_symmetry(greater, true);
    const GreensSeries ret = retarded(greater, lesser);

    write_time_series_csv(ctx.greens_pair_path(p, q).string(), greater.times,
                          greater.values);
    const json sidecar{{"kind", "greater"},
                       {"p", p},
                       {"q", q},
                       {"u", spec.u},
                       {"n", n},
                       {"mu", spec.mu},
                       {"e_phase", gs_art.e_phase},
                       {"dt", ctx.cfg.at("dt")},
                       {"l2_cut", ctx.cfg.at("l2_cut")},
                       {"branch_norm_p", traj.branch_norm_p},
                       {"branch_norm_q", traj.branch_norm_q},
                       {"spin", "up"}};
    write_json_file(ctx.greens_pair_path(p, q).string() + ".meta.json",
                    sidecar.dump(1));

    retarded_pairs[p][q] = ret;
    if (p != q) {
      GreensSeries mirrored = ret;  // G_pq = G_qp for the real symmetric chain
      mirrored.p = q;
      mirrored.q = p;
      retarded_pairs[q][p] = std::move(mirrored);
    }
    times = traj.times;
  }

  const auto ks = momentum_grid(n);
  for (std::size_t m = 0; m < ks.size(); ++m) {
    const GreensSeries series = momentum_combine(retarded_pairs, ks[m], n);
    write_time_series_csv(ctx.greens_momentum_path(static_cast<int>(m)).string(),
                          series.times, series.values);
    const json sidecar{{"kind", "retarded"},      {"k", ks[m]},
                       {"u", spec.u},             {"n", n},
                       {"mu", spec.mu},           {"e_phase", gs_art.e_phase},
                       {"dt", ctx.cfg.at("dt")},  {"l2_cut", ctx.cfg.at("l2_cut")},
                       {"spin", "up"}};
    write_json_file(ctx.greens_momentum_path(static_cast<int>(m)).string() +
                        ".meta.json",
                    sidecar.dump(1));
    std::cout << "greens: wrote momentum series k=" << fmt(ks[m]) << "\n";
  }

  // Exact reference curves on the same grids.
  const EigenSystem sys = eigensystem(h);
  std::vector<std::vector<GreensSeries>> exact_pairs(n, std::vector<GreensSeries>(n));
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      const PauliSum cp = jw_annihilation(p, Spin::Up, layout);
      const PauliSum cq = jw_annihilation(q, Spin::Up, layout);
      const TimeGreens tg = exact_greens_time(sys, gs.energy, gs.state, cp, cq, times);
      GreensSeries gg;
      gg.times = times;
      gg.values = tg.greater;
      gg.kind = GreensKind::Greater;
      GreensSeries gl;
      gl.times = times;
      gl.values = tg.lesser;
      gl.kind = GreensKind::Lesser;
      exact_pairs[p][q] = retarded(gg, gl);
    }
  }
  for (std::size_t m = 0; m < ks.size(); ++m) {
    const GreensSeries series = momentum_combine(exact_pairs, ks[m], n);
    write_time_series_csv(
        (ctx.out / ("greens_retarded_exact_k" + std::to_string(m) + ".csv")).string(),
        series.times, series.values);
  }
}

// ---------------------------------------------------------------------------
// spectrum

void run_spectrum(const Context& ctx) {
  const HubbardSpec spec = ctx.spec();
  const QubitLayout layout = ctx.layout();
  const double zeta = ctx.cfg.at("zeta").get<double>();
  const auto omega = omega_grid(ctx.cfg);
  const auto ks = momentum_grid(spec.n_sites);

  for (std::size_t m = 0; m < ks.size(); ++m) {
    ctx.require(ctx.greens_momentum_path(static_cast<int>(m)), "greens");
    const TimeSeries series =
        read_time_series_csv(ctx.greens_momentum_path(static_cast<int>(m)).string());
    const double dt = series.times.size() > 1 ? series.times[1] - series.times[0]
                                              : ctx.cfg.at("dt").get<double>();
    const PadeSpectrum fit =
        pade_fit(apply_damping(series.values, dt, zeta), dt, zeta);
    const auto accelerated = pade_eval(fit, omega);
    write_spectrum_csv(
        (ctx.out / ("spectrum_pade_k" + std::to_string(m) + ".csv")).string(), omega,
        accelerated);
    const auto plain = damped_dft(series.values, dt, zeta, omega);
    write_spectrum_csv(
        (ctx.out / ("spectrum_dft_k" + std::to_string(m) + ".csv")).string(), omega,
        plain);
  }

  // Oracle resolvent on the same momentum grid.
  const PauliSum h = build_hamiltonian(spec, layout);
  const GroundState gs = ground_state(h, layout, Sector{spec.n_sites, 0});
  const EigenSystem sys = eigensystem(h);
  for (std::size_t m = 0; m < ks.size(); ++m) {
    std::vector<cplx> acc(omega.size(), cplx{0, 0});
    for (int p = 0; p < spec.n_sites; ++p) {
      for (int q = 0; q < spec.n_sites; ++q) {
        const PauliSum cp = jw_annihilation(p, Spin::Up, layout);
        const PauliSum cq = jw_annihilation(q, Spin::Up, layout);
        const auto g =
            exact_greens_omega(sys, gs.energy, gs.state, cp, cq, omega, zeta);
        const cplx w = momentum_weight(ks[m], p, q, spec.n_sites);
        for (std::size_t i = 0; i < omega.size(); ++i) acc[i] += w * g[i];
      }
    }
    write_spectrum_csv(
        (ctx.out / ("spectrum_exact_k" + std::to_string(m) + ".csv")).string(), omega,
        acc);
    std::cout << "spectrum: k=" << fmt(ks[m]) << " done\n";
  }
}

// ---------------------------------------------------------------------------
// shots

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  // splitmix64 step keeps the per-task streams decorrelated and reproducible.
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void run_shots(const Context& ctx) {
  const HubbardSpec spec = ctx.spec();
  const QubitLayout layout = ctx.layout();
  const int p = ctx.cfg.at("shot_pair").at("p").get<int>();
  const int q = ctx.cfg.at("shot_pair").at("q").get<int>();
  ctx.require(ctx.trajectory_path(p, q), "dynamics");
  const Trajectory traj = load_trajectory(ctx.trajectory_path(p, q).string());

  const PauliSum h = build_hamiltonian(spec, layout);
  const GroundState gs = ground_state(h, layout, Sector{spec.n_sites, 0});
  const BranchSet branch_p = make_branch_set(jw_creation(p, Spin::Up, layout), "p");
  const BranchSet branch_q = make_branch_set(jw_creation(q, Spin::Up, layout), "q");

  const auto stride = ctx.cfg.at("shot_stride").get<std::size_t>();
  const auto shots = ctx.cfg.at("shots").get<std::uint64_t>();
  const double p01 = ctx.cfg.at("noise").at("p01").get<double>();
  const double p10 = ctx.cfg.at("noise").at("p10").get<double>();
  const NoiseModel model = NoiseModel::uniform(layout.n_qubits() + 1, p01, p10);

  std::vector<HistogramRecord> records;
  std::uint64_t counter = 0;
  for (std::size_t step = 0; step < traj.times.size(); step += stride) {
    const Ansatz ansatz = traj.ansatz_at(step);
    for (std::size_t a = 0; a < branch_p.entries.size(); ++a) {
      for (std::size_t b = 0; b < branch_q.entries.size(); ++b) {
        for (const PhaseMode mode : {PhaseMode::Real, PhaseMode::Imag}) {
          const OverlapDistribution dist =
              overlap_probabilities(gs.state, branch_q.entries[b].word, ansatz,
                                    branch_p.entries[a].word, mode);
          OverlapDistribution noisy = dist;
          noisy.joint = readout_convolve(dist.joint, model);
          const std::uint64_t seed = derive_seed(ctx.seed(), counter++);
          HistogramRecord rec;
          rec.time_index = static_cast<int>(step);
          rec.time = traj.times[step];
          rec.alpha = static_cast<int>(a);
          rec.beta = static_cast<int>(b);
          rec.mode = mode;
          rec.seed = seed;
          rec.noise_p01 = p01;
          rec.noise_p10 = p10;
          rec.histogram = sample_counts(noisy, shots, seed);
          records.push_back(std::move(rec));
        }
      }
    }
  }
  save_histograms(records, ctx.histograms_path(p, q).string());
  std::cout << "shots: " << records.size() << " histograms written for pair (" << p
            << "," << q << ")\n";
}

// ---------------------------------------------------------------------------
// mitigate

void run_mitigate(const Context& ctx) {
  const HubbardSpec spec = ctx.spec();
  const QubitLayout layout = ctx.layout();
  const int p = ctx.cfg.at("shot_pair").at("p").get<int>();
  const int q = ctx.cfg.at("shot_pair").at("q").get<int>();
  ctx.require(ctx.histograms_path(p, q), "shots");
  ctx.require(ctx.trajectory_path(p, q), "dynamics");
  const auto records = load_histograms(ctx.histograms_path(p, q).string());
  const Trajectory traj = load_trajectory(ctx.trajectory_path(p, q).string());
  const BranchSet branch_p = make_branch_set(jw_creation(p, Spin::Up, layout), "p");
  const BranchSet branch_q = make_branch_set(jw_creation(q, Spin::Up, layout), "q");

  const double epsilon = ctx.cfg.at("epsilon").get<double>();
  const auto grid = k2_grid(ctx.cfg);
  const int n_electrons = spec.n_sites;  // half filling

  auto p0_estimator = [](const std::vector<double>& weights) {
    double zeros = 0, total = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      total += weights[i];
      if (i < weights.size() / 2) zeros += weights[i];
    }
    if (total <= 0) throw std::runtime_error("empty histogram in estimator");
    return zeros / total;
  };

  std::map<int, std::map<std::tuple<int, int, int>, const HistogramRecord*>> by_step;
  for (const auto& rec : records) {
    by_step[rec.time_index]
           [{rec.alpha, rec.beta, rec.mode == PhaseMode::Real ? 0 : 1}] = &rec;
  }

  std::vector<double> times;
  std::vector<cplx> raw, mitigated;
  std::vector<std::string> log_rows;
  for (const auto& [step, group] : by_step) {
    const double time = traj.times.at(static_cast<std::size_t>(step));
    const double phi = traj.phases.at(static_cast<std::size_t>(step));
    cplx raw_acc = 0, mit_acc = 0;
    for (std::size_t a = 0; a < branch_p.entries.size(); ++a) {
      for (std::size_t b = 0; b < branch_q.entries.size(); ++b) {
        double parts_raw[2] = {0, 0};
        double parts_mit[2] = {0, 0};
        for (int mode = 0; mode < 2; ++mode) {
          const auto it =
              group.find({static_cast<int>(a), static_cast<int>(b), mode});
          if (it == group.end()) {
            throw std::runtime_error("incomplete histogram set at step " +
                                     std::to_string(step));
          }
          const Histogram& hist = it->second->histogram;
          parts_raw[mode] = 2.0 * estimate_p0(hist) - 1.0;

          const PostselectResult sel = number_postselect(hist, n_electrons);
          if (sel.empty) {
            throw std::runtime_error("post-selection removed every shot at step " +
                                     std::to_string(step));
          }
          const std::vector<double> weights(sel.histogram.counts.begin(),
                                            sel.histogram.counts.end());
          const SweepResult sweep = k2_sweep(weights, p0_estimator, epsilon, grid);
          parts_mit[mode] = 2.0 * sweep.p0 - 1.0;
          log_rows.push_back(fmt(time) + "," + std::to_string(a) + "," +
                             std::to_string(b) + "," + (mode == 0 ? "real" : "imag") +
                             "," + fmt(estimate_p0(hist)) + "," +
                             fmt(p0_estimator(weights)) + "," + fmt(sweep.k2) + "," +
                             fmt(sweep.p0));
        }
        // Branch-pair recombination; the bra coefficients enter conjugated.
        const cplx coeff =
            std::conj(branch_p.entries[a].coeff) * branch_q.entries[b].coeff;
        raw_acc += coeff * cplx{parts_raw[0], parts_raw[1]};
        mit_acc += coeff * cplx{parts_mit[0], parts_mit[1]};
      }
    }
    // Reattach the classically tracked global phase and the E0 rotation.
    const double total_phase = phi + traj.e_phase * time;
    const cplx rotation =
        cplx{0, -1} * cplx{std::cos(total_phase), std::sin(total_phase)};
    const double scale = traj.branch_norm_p * traj.branch_norm_q;
    times.push_back(time);
    raw.push_back(scale * rotation * raw_acc);
    mitigated.push_back(scale * rotation * mit_acc);
  }
  const auto& smoothing = ctx.cfg.at("smoothing");
  const std::vector<cplx> smoothed = savitzky_golay(
      mitigated, smoothing.at("window").get<int>(), smoothing.at("polyorder").get<int>());

  const std::string base =
      "greens_mitigated_p" + std::to_string(p) + "_q" + std::to_string(q);
  write_time_series_csv((ctx.out / (base + "_raw.csv")).string(), times, raw);
  write_time_series_csv((ctx.out / (base + ".csv")).string(), times, mitigated);
  write_time_series_csv((ctx.out / (base + "_smoothed.csv")).string(), times, smoothed);

  std::ofstream log(ctx.out / (base + "_provenance.csv"));
  log << "time,alpha,beta,mode,raw_p0,postselected_p0,k2,mitigated_p0\n";
  for (const auto& row : log_rows) log << row << "\n";
  std::cout << "mitigate: " << times.size() << " points for pair (" << p << "," << q
            << ")\n";
}

// ---------------------------------------------------------------------------
// resources

void run_resources(const Context& ctx) {
  const HubbardSpec spec = ctx.spec();
  const QubitLayout layout = ctx.layout();
  const PauliSum h = build_hamiltonian(spec, layout);
  const int n_ham = static_cast<int>(h.size());

  json report;
  report["n_sites"] = spec.n_sites;
  report["u"] = spec.u;
  report["hamiltonian_terms"] = n_ham;

  json per_pair = json::array();
  std::int64_t total_params = 0, total_cnots = 0;
  for (const auto& [p, q] : pair_list(spec.n_sites)) {
    const fs::path path = ctx.trajectory_path(p, q);
    if (!fs::exists(path)) continue;
    const Trajectory traj = load_trajectory(path.string());

    std::vector<double> bound_series, param_series;
    for (const auto& row : traj.angles) {
      std::vector<int> weights;
      for (std::size_t k = 0; k < row.size(); ++k) {
        weights.push_back(traj.generators[k].weight());
      }
      bound_series.push_back(static_cast<double>(cnot_upper_bound(weights).unitary));
      param_series.push_back(static_cast<double>(row.size()));
    }
    write_real_series_csv(
        (ctx.out /
         ("cnot_bound_p" + std::to_string(p) + "_q" + std::to_string(q) + ".csv"))
            .string(),
        "time", traj.times,
        {{"cnot_upper_bound", &bound_series}, {"n_params", &param_series}});

    std::vector<int> weights;
    for (const auto& g : traj.generators) weights.push_back(g.weight());
    const CnotBound bound = cnot_upper_bound(weights);
    const auto n_params = static_cast<int>(traj.generators.size());
    total_params += n_params;
    total_cnots += bound.unitary;
    per_pair.push_back(
        json{{"p", p},
             {"q", q},
             {"n_params", n_params},
             {"cnot_unitary", bound.unitary},
             {"cnot_controlled", bound.controlled},
             {"circuits_per_step", circuits_per_step(n_params, n_ham, false)},
             {"circuits_per_step_adaptive", circuits_per_step(n_params, n_ham, true)}});
  }
  report["pairs"] = per_pair;
  report["total_params"] = total_params;
  report["total_cnot_unitary"] = total_cnots;

  const double delta = 4e-4;
  report["trotter_unitaries"] =
      trotter_unitaries(n_ham, delta, ctx.cfg.at("total_time").get<double>());
  report["trotter_delta"] = delta;
  report["vha_cnots_n2_8layers"] = vha_cnots(2, 8);
  report["vha_cnots_n4_16layers"] = vha_cnots(4, 16);

  write_json_file((ctx.out / "resource_report.json").string(), report.dump(1));

  std::cout << "resources: N_H=" << n_ham << "\n";
  std::cout << "  pair   n_params  cnot(unitary)  cnot(+ancilla)  circuits/step\n";
  for (const auto& row : per_pair) {
    std::printf("  (%d,%d)  %8d  %13lld  %14lld  %13lld\n", row["p"].get<int>(),
                row["q"].get<int>(), row["n_params"].get<int>(),
                static_cast<long long>(row["cnot_unitary"].get<std::int64_t>()),
                static_cast<long long>(row["cnot_controlled"].get<std::int64_t>()),
                static_cast<long long>(row["circuits_per_step"].get<std::int64_t>()));
  }
  std::printf("  totals: n_params=%lld cnot(unitary)=%lld\n",
              static_cast<long long>(total_params),
              static_cast<long long>(total_cnots));
  std::printf("  trotter_unitaries(N_H=%d, delta=%.1e, t=%.3g) = %.4g\n", n_ham, delta,
              ctx.cfg.at("total_time").get<double>(),
              report["trotter_unitaries"].get<double>());
  std::printf("  vha_cnots: N=2/8 layers = %.4g, N=4/16 layers = %.4g\n",
              report["vha_cnots_n2_8layers"].get<double>(),
              report["vha_cnots_n4_16layers"].get<double>());
}

// ---------------------------------------------------------------------------
// figure presets

void reproduce_figure(Context ctx, const std::string& which) {
  if (which == "1" || which == "2") {
    for (const double u : {4.0, 8.0}) {
      Context sub = ctx;
      sub.out = ctx.out / ("u" + std::to_string(static_cast<int>(u)));
      fs::create_directories(sub.out);
      sub.cfg["u"] = u;
      run_ground_state(sub);
      run_dynamics(sub, true);
      run_greens(sub);
      if (which == "2") {
        run_spectrum(sub);
        run_resources(sub);
      }
    }
  } else if (which == "3c") {
    run_ground_state(ctx);
    run_dynamics(ctx, true);
    std::vector<std::pair<std::string, std::vector<double>>> columns;
    std::vector<double> times;
    for (const auto& [p, q] : pair_list(ctx.spec().n_sites)) {
      const Trajectory traj = load_trajectory(ctx.trajectory_path(p, q).string());
      times = traj.times;
      columns.emplace_back("delta_p" + std::to_string(p) + "q" + std::to_string(q),
                           traj.delta);
    }
    std::vector<std::pair<std::string, const std::vector<double>*>> refs;
    refs.reserve(columns.size());
    for (const auto& [name, values] : columns) refs.emplace_back(name, &values);
    write_real_series_csv((ctx.out / "unitary_error.csv").string(), "time", times,
                          refs);
  } else if (which == "4") {
    ctx.cfg["n_sites"] = 2;
    run_ground_state(ctx);
    run_dynamics(ctx, true);
    run_greens(ctx);
    run_spectrum(ctx);
    run_shots(ctx);
    run_mitigate(ctx);
  } else if (which == "5") {
    ctx.cfg["n_sites"] = 2;
    run_ground_state(ctx);
    run_dynamics(ctx, false);
    run_shots(ctx);
    const int p = ctx.cfg.at("shot_pair").at("p").get<int>();
    const int q = ctx.cfg.at("shot_pair").at("q").get<int>();
    const auto records = load_histograms(ctx.histograms_path(p, q).string());
    const HistogramRecord& rec = records.at(records.size() / 2);
    const PostselectResult sel = number_postselect(rec.histogram, ctx.spec().n_sites);
    const std::vector<double> before(sel.histogram.counts.begin(),
                                     sel.histogram.counts.end());
    const std::vector<double> after = resolution_enhance(before, 1.0);
    std::vector<double> bins(before.size());
    for (std::size_t i = 0; i < bins.size(); ++i) bins[i] = static_cast<double>(i);
    write_real_series_csv((ctx.out / "histogram_enhancement.csv").string(), "bin",
                          bins, {{"postselected", &before}, {"enhanced", &after}});
  } else {
    throw std::runtime_error("unknown figure preset: " + which);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive variational dynamics pipeline for Hubbard Green's functions"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed_flag;
  std::optional<int> n_flag;
  std::optional<double> u_flag, dt_flag, total_time_flag, zeta_flag, l2_flag;
  std::optional<std::uint64_t> shots_flag;
  std::optional<double> p01_flag, p10_flag;

  app.add_option("--config", config_path, "JSON configuration file");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--seed", seed_flag, "master random seed");
  app.add_option("--n", n_flag, "number of lattice sites");
  app.add_option("--u", u_flag, "on-site interaction U");
  app.add_option("--dt", dt_flag, "integrator step");
  app.add_option("--total-time", total_time_flag, "simulation horizon");
  app.add_option("--zeta", zeta_flag, "spectral damping");
  app.add_option("--l2-cut", l2_flag, "adaptive distance threshold");
  app.add_option("--shots", shots_flag, "shots per circuit");
  app.add_option("--noise-p01", p01_flag, "readout flip probability P(1|0)");
  app.add_option("--noise-p10", p10_flag, "readout flip probability P(0|1)");

  auto* sc_ground = app.add_subcommand("ground-state", "prepare the ground state");
  auto* sc_dynamics =
      app.add_subcommand("dynamics", "adaptive real-time evolution per orbital pair");
  bool no_delta = false;
  sc_dynamics->add_flag("--no-delta", no_delta,
                        "skip the exact-propagation error series");
  auto* sc_greens = app.add_subcommand("greens", "assemble Green's functions");
  auto* sc_spectrum = app.add_subcommand("spectrum", "spectral transforms");
  auto* sc_shots = app.add_subcommand("shots", "sample measurement histograms");
  auto* sc_mitigate = app.add_subcommand("mitigate", "histogram error mitigation");
  auto* sc_resources = app.add_subcommand("resources", "resource estimates");
  std::string figure;
  auto* sc_figure =
      app.add_subcommand("reproduce-figure", "run a preset end-to-end chain");
  sc_figure->add_option("figure", figure, "one of 1, 2, 3c, 4, 5")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    Context ctx;
    ctx.cfg = default_config();
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw std::runtime_error("cannot open config " + config_path);
      json user;
      in >> user;
      ctx.cfg.merge_patch(user);
    }
    if (seed_flag) ctx.cfg["seed"] = *seed_flag;
    if (n_flag) ctx.cfg["n_sites"] = *n_flag;
    if (u_flag) ctx.cfg["u"] = *u_flag;
    if (dt_flag) ctx.cfg["dt"] = *dt_flag;
    if (total_time_flag) ctx.cfg["total_time"] = *total_time_flag;
    if (zeta_flag) ctx.cfg["zeta"] = *zeta_flag;
    if (l2_flag) ctx.cfg["l2_cut"] = *l2_flag;
    if (shots_flag) ctx.cfg["shots"] = *shots_flag;
    if (p01_flag) ctx.cfg["noise"]["p01"] = *p01_flag;
    if (p10_flag) ctx.cfg["noise"]["p10"] = *p10_flag;

    ctx.out = out_dir;
    fs::create_directories(ctx.out);

    if (sc_ground->parsed()) run_ground_state(ctx);
    if (sc_dynamics->parsed()) run_dynamics(ctx, !no_delta);
    if (sc_greens->parsed()) run_greens(ctx);
    if (sc_spectrum->parsed()) run_spectrum(ctx);
    if (sc_shots->parsed()) run_shots(ctx);
    if (sc_mitigate->parsed()) run_mitigate(ctx);
    if (sc_resources->parsed()) run_resources(ctx);
    if (sc_figure->parsed()) reproduce_figure(ctx, figure);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 0;
}
