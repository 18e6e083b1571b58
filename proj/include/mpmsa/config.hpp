#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mpmsa/msa_classifier.hpp"

namespace mpmsa {

// Sectioned key = value configuration; every key is listed in config_keys().
struct ExperimentConfig {
  // [model]
  std::string graph = "path:30";
  int N = 1;
  std::string distribution = "uniform:0:1";
  std::string interaction = "none";
  double g = 1;
  std::vector<double> g_grid;  // efc: couplings; empty means {g}

  // [params]
  ParameterSet params;

  // [experiment]
  std::string kind = "validate-params";
  long long trials = 100;
  std::uint64_t seed = 1;
  std::string out = "out";
  Configuration center;             // empty: a default chosen by the experiment
  Configuration center2;
  int radius = 2;
  int kmax = 1;
  double energy = 0.5;
  std::vector<double> energies;     // worst-over-grid energies; empty means {energy}
  std::vector<double> s_grid;
  std::vector<int> q_sizes;
  int ell = 1;
  double level = 0;                 // bridge level; 0 means exp(-m_N L^delta)
  double shift = 0.5;
  int batches = 10;
  int volume_budget = default_volume_budget;
  int vertex_budget = default_vertex_budget;
};

struct ConfigKey {
  std::string section;
  std::string key;
};

const std::vector<ConfigKey>& config_keys();

// Throws ConfigError on syntax errors, unknown sections or keys, and malformed values.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);
std::string serialize(const ExperimentConfig& c);

// Structural checks independent of the experiment: parsable specs and positive sizes.
std::vector<std::string> validate_config(const ExperimentConfig& c);

}  // namespace mpmsa
