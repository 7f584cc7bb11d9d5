#pragma once

#include <string>
#include <vector>

#include "qgf/avqds.hpp"
#include "qgf/greens.hpp"
#include "qgf/shots.hpp"

namespace qgf {

/// Persisted ground-state stage output: the ansatz, energies and the phase
/// reference consumed by the dynamics and assembly stages.
struct GroundStateArtifact {
  int n_sites = 0;
  double t = 1.0;
  double u = 0;
  double mu = 0;
  std::vector<std::string> generators;  // token form
  std::vector<double> angles;
  double energy_variational = 0;
  double energy_exact = 0;
  double e_phase = 0;  // exact ground energy of the identity-stripped H
  double identity_coeff = 0;
  double infidelity = 0;

  Ansatz ansatz(int n_qubits) const;
};

void save_ground_state(const GroundStateArtifact& artifact, const std::string& path);
GroundStateArtifact load_ground_state(const std::string& path);

void save_trajectory(const Trajectory& traj, const std::string& path);
Trajectory load_trajectory(const std::string& path);

/// One sampled overlap circuit: which time step, branch pair and phase mode
/// produced the histogram, plus the sampling metadata.
struct HistogramRecord {
  int time_index = 0;
  double time = 0;
  int alpha = 0;
  int beta = 0;
  PhaseMode mode = PhaseMode::Real;
  std::uint64_t seed = 0;
  double noise_p01 = 0;
  double noise_p10 = 0;
  Histogram histogram;
};

void save_histograms(const std::vector<HistogramRecord>& records,
                     const std::string& path);
std::vector<HistogramRecord> load_histograms(const std::string& path);

/// CSV writers with fixed 12-significant-digit formatting so identical runs
/// are byte-identical.
void write_time_series_csv(const std::string& path, const std::vector<double>& times,
                           const std::vector<cplx>& values);
void write_spectrum_csv(const std::string& path, const std::vector<double>& omega,
                        const std::vector<cplx>& values);
void write_real_series_csv(const std::string& path, const std::string& x_label,
                           const std::vector<double>& xs,
                           const std::vector<std::pair<std::string, const std::vector<double>*>>& columns);

void write_json_file(const std::string& path, const std::string& body);

struct TimeSeries {
  std::vector<double> times;
  std::vector<cplx> values;
};

/// Reads back the "time,re,im" layout produced by write_time_series_csv.
TimeSeries read_time_series_csv(const std::string& path);

}  // namespace qgf
