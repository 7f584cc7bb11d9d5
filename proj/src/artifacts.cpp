#include "qgf/artifacts.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace qgf {

namespace {

using nlohmann::json;

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  in >> j;
  return j;
}

void dump_json(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(1) << '\n';
}

std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

Ansatz GroundStateArtifact::ansatz(int n_qubits) const {
  Ansatz a;
  for (const auto& tokens : generators) {
    a.generators.push_back(PauliWord::from_tokens(tokens, n_qubits));
  }
  a.angles = angles;
  return a;
}

void save_ground_state(const GroundStateArtifact& artifact, const std::string& path) {
  json j;
  j["n_sites"] = artifact.n_sites;
  j["t"] = artifact.t;
  j["u"] = artifact.u;
  j["mu"] = artifact.mu;
  j["generators"] = artifact.generators;
  j["angles"] = artifact.angles;
  j["energy_variational"] = artifact.energy_variational;
  j["energy_exact"] = artifact.energy_exact;
  j["e_phase"] = artifact.e_phase;
  j["identity_coeff"] = artifact.identity_coeff;
  j["infidelity"] = artifact.infidelity;
  dump_json(j, path);
}

GroundStateArtifact load_ground_state(const std::string& path) {
  const json j = load_json(path);
  GroundStateArtifact a;
  a.n_sites = j.at("n_sites").get<int>();
  a.t = j.at("t").get<double>();
  a.u = j.at("u").get<double>();
  a.mu = j.at("mu").get<double>();
  a.generators = j.at("generators").get<std::vector<std::string>>();
  a.angles = j.at("angles").get<std::vector<double>>();
  a.energy_variational = j.at("energy_variational").get<double>();
  a.energy_exact = j.at("energy_exact").get<double>();
  a.e_phase = j.at("e_phase").get<double>();
  a.identity_coeff = j.at("identity_coeff").get<double>();
  a.infidelity = j.at("infidelity").get<double>();
  return a;
}

void save_trajectory(const Trajectory& traj, const std::string& path) {
  json j;
  j["n_qubits"] = traj.n_qubits;
  j["p"] = traj.p;
  j["q"] = traj.q;
  j["e_phase"] = traj.e_phase;
  j["branch_norm_p"] = traj.branch_norm_p;
  j["branch_norm_q"] = traj.branch_norm_q;
  j["times"] = traj.times;
  json gens = json::array();
  for (const auto& g : traj.generators) gens.push_back(g.tokens());
  j["generators"] = gens;
  j["angles"] = traj.angles;
  j["phases"] = traj.phases;
  json ins = json::array();
  for (const auto& [time, word] : traj.insertions) {
    ins.push_back({{"time", time}, {"word", word.tokens()}});
  }
  j["insertions"] = ins;
  j["l2"] = traj.l2;
  j["var_h"] = traj.var_h;
  j["delta"] = traj.delta;
  dump_json(j, path);
}

Trajectory load_trajectory(const std::string& path) {
  const json j = load_json(path);
  Trajectory traj;
  traj.n_qubits = j.at("n_qubits").get<int>();
  traj.p = j.at("p").get<int>();
  traj.q = j.at("q").get<int>();
  traj.e_phase = j.at("e_phase").get<double>();
  traj.branch_norm_p = j.at("branch_norm_p").get<double>();
  traj.branch_norm_q = j.at("branch_norm_q").get<double>();
  traj.times = j.at("times").get<std::vector<double>>();
  for (const auto& tokens : j.at("generators")) {
    traj.generators.push_back(
        PauliWord::from_tokens(tokens.get<std::string>(), traj.n_qubits));
  }
  traj.angles = j.at("angles").get<std::vector<std::vector<double>>>();
  traj.phases = j.at("phases").get<std::vector<double>>();
  for (const auto& entry : j.at("insertions")) {
    traj.insertions.emplace_back(
        entry.at("time").get<double>(),
        PauliWord::from_tokens(entry.at("word").get<std::string>(), traj.n_qubits));
  }
  traj.l2 = j.at("l2").get<std::vector<double>>();
  traj.var_h = j.at("var_h").get<std::vector<double>>();
  traj.delta = j.at("delta").get<std::vector<double>>();
  return traj;
}

void save_histograms(const std::vector<HistogramRecord>& records,
                     const std::string& path) {
  json out = json::array();
  for (const auto& rec : records) {
    json j;
    j["time_index"] = rec.time_index;
    j["time"] = rec.time;
    j["alpha"] = rec.alpha;
    j["beta"] = rec.beta;
    j["mode"] = rec.mode == PhaseMode::Real ? "real" : "imag";
    j["seed"] = rec.seed;
    j["noise_p01"] = rec.noise_p01;
    j["noise_p10"] = rec.noise_p10;
    j["shots"] = rec.histogram.shots;
    j["n_system_bits"] = rec.histogram.n_system_bits;
    json counts = json::object();
    for (std::size_t b = 0; b < rec.histogram.counts.size(); ++b) {
      if (rec.histogram.counts[b] == 0) continue;
      counts[Histogram::key_of(b, rec.histogram.n_system_bits)] =
          rec.histogram.counts[b];
    }
    j["counts"] = counts;
    out.push_back(std::move(j));
  }
  dump_json(out, path);
}

std::vector<HistogramRecord> load_histograms(const std::string& path) {
  const json in = load_json(path);
  std::vector<HistogramRecord> records;
  for (const auto& j : in) {
    HistogramRecord rec;
    rec.time_index = j.at("time_index").get<int>();
    rec.time = j.at("time").get<double>();
    rec.alpha = j.at("alpha").get<int>();
    rec.beta = j.at("beta").get<int>();
    rec.mode = j.at("mode").get<std::string>() == "imag" ? PhaseMode::Imag
                                                         : PhaseMode::Real;
    rec.seed = j.at("seed").get<std::uint64_t>();
    rec.noise_p01 = j.at("noise_p01").get<double>();
    rec.noise_p10 = j.at("noise_p10").get<double>();
    rec.histogram.n_system_bits = j.at("n_system_bits").get<int>();
    rec.histogram.shots = j.at("shots").get<std::uint64_t>();
    rec.histogram.counts.assign(
        std::size_t{1} << (rec.histogram.n_system_bits + 1), 0);
    for (const auto& [key, value] : j.at("counts").items()) {
      rec.histogram.counts[Histogram::index_of(key)] = value.get<std::uint64_t>();
    }
    records.push_back(std::move(rec));
  }
  return records;
}

void write_time_series_csv(const std::string& path, const std::vector<double>& times,
                           const std::vector<cplx>& values) {
  if (times.size() != values.size()) {
    throw std::invalid_argument("series grids differ");
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "time,re,im\n";
  for (std::size_t i = 0; i < times.size(); ++i) {
    out << fmt12(times[i]) << ',' << fmt12(values[i].real()) << ','
        << fmt12(values[i].imag()) << '\n';
  }
}

void write_spectrum_csv(const std::string& path, const std::vector<double>& omega,
                        const std::vector<cplx>& values) {
  if (omega.size() != values.size()) {
    throw std::invalid_argument("series grids differ");
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "omega,re,im,spectral\n";
  constexpr double kPi = 3.14159265358979323846;
  for (std::size_t i = 0; i < omega.size(); ++i) {
    out << fmt12(omega[i]) << ',' << fmt12(values[i].real()) << ','
        << fmt12(values[i].imag()) << ',' << fmt12(-values[i].imag() / kPi) << '\n';
  }
}

void write_real_series_csv(
    const std::string& path, const std::string& x_label, const std::vector<double>& xs,
    const std::vector<std::pair<std::string, const std::vector<double>*>>& columns) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << x_label;
  for (const auto& [name, values] : columns) {
    if (values->size() != xs.size()) {
      throw std::invalid_argument("column length differs from grid");
    }
    out << ',' << name;
  }
  out << '\n';
  for (std::size_t i = 0; i < xs.size(); ++i) {
    out << fmt12(xs[i]);
    for (const auto& [name, values] : columns) out << ',' << fmt12((*values)[i]);
    out << '\n';
  }
}

void write_json_file(const std::string& path, const std::string& body) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << body << '\n';
}

TimeSeries read_time_series_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty CSV " + path);
  TimeSeries series;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::size_t c1 = line.find(',');
    const std::size_t c2 = line.find(',', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) {
      throw std::runtime_error("malformed CSV row in " + path);
    }
    series.times.push_back(std::stod(line.substr(0, c1)));
    series.values.emplace_back(std::stod(line.substr(c1 + 1, c2 - c1 - 1)),
                               std::stod(line.substr(c2 + 1)));
  }
  return series;
}

}  // namespace qgf
