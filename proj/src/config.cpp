// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The chirpwave Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "chirpwave/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace chirpwave {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size() || !std::isfinite(d)) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("invalid value for key '" + key + "': " + v);
  }
}

long long to_int(const std::string& key, const std::string& v) {
  const double d = to_double(key, v);
  if (d != std::floor(d)) throw ConfigError("key '" + key + "' expects an integer: " + v);
  return static_cast<long long>(d);
}

// "4N" -> 4 N, "N" -> N, "4096" -> 4096.
double resolve_denominator(const std::string& den, int n) {
  std::string s = trim(den);
  if (!s.empty() && (s.back() == 'N' || s.back() == 'n')) {
    s.pop_back();
    const double mult = s.empty() ? 1.0 : to_double("denominator", s);
    return mult * n;
  }
  return to_double("denominator", s);
}

}  // namespace

SweepVar parse_sweep(const std::string& s) {
  if (s == "speed") return SweepVar::Speed;
  if (s == "rolloff" || s == "beta") return SweepVar::Rolloff;
  if (s == "span" || s == "q") return SweepVar::Span;
  throw ConfigError("invalid value for key 'sweep': " + s);
}

std::string to_string(SweepVar v) {
  switch (v) {
    case SweepVar::Speed: return "speed";
    case SweepVar::Rolloff: return "rolloff";
    case SweepVar::Span: return "span";
  }
  return "speed";
}

ChirpConfig ExperimentConfig::chirp() const {
  ChirpConfig cfg;
  cfg.n = n;
  cfg.t = t_us * 1e-6;
  const double d1 = resolve_denominator(c1_den, n);
  const double d2 = resolve_denominator(c2_den, n);
  if (d1 == 0.0 || d2 == 0.0) throw ConfigError("chirp parameter denominator must be non-zero");
  cfg.c1 = c_index > 0.0 ? c_index / (2.0 * n) : c1_num / d1;
  cfg.c2 = c2_num / d2;
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

std::vector<double> ExperimentConfig::sweep_grid() const {
  if (!sweep_values.empty()) return sweep_values;
  std::vector<double> g;
  switch (sweep) {
    case SweepVar::Speed:
      for (int i = 0; i <= 10; ++i) g.push_back(50.0 * i);
      break;
    case SweepVar::Rolloff:
      for (int i = 1; i <= 10; ++i) g.push_back(0.1 * i);
      break;
    case SweepVar::Span:
      for (int qv = 6; qv <= 20; qv += 2) g.push_back(qv);
      break;
  }
  return g;
}

void ExperimentConfig::apply_small() {
  const double ts_us = t_us / n;
  n = 256;
  t_us = ts_us * n;
  trials = 20;
  oversample = 8;
}

void ExperimentConfig::validate() const {
  if (n < 2 || n % 2 != 0) throw ConfigError("key 'n' must be an even integer >= 2");
  if (!(t_us > 0.0)) throw ConfigError("key 't_us' must be positive");
  if (!(beta >= 0.0 && beta <= 1.0)) throw ConfigError("key 'beta' must lie in [0, 1]");
  if (q < 2 || q % 2 != 0) throw ConfigError("key 'q' must be an even integer >= 2");
  if (oversample < 2) throw ConfigError("key 'oversample' must be >= 2");
  if (trials < 1) throw ConfigError("key 'trials' must be >= 1");
  if (frames < 10) throw ConfigError("key 'frames' must be >= 10");
  if (nfft < 0 || nfft % 2 != 0) throw ConfigError("key 'nfft' must be even (0 selects the default)");
  if (rbw_subcarriers < 1) throw ConfigError("key 'rbw_subcarriers' must be >= 1");
  if (fc_hz <= 0.0) throw ConfigError("key 'fc_hz' must be positive");
  if (speed_kmh < 0.0) throw ConfigError("key 'speed_kmh' must be non-negative");
  if (n_od < 1) throw ConfigError("key 'n_od' must be positive");
  const auto grid = sweep_grid();
  if (grid.empty()) throw ConfigError("key 'sweep_values' must not be empty");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw ConfigError("key 'sweep_values' must be strictly increasing");
  }
  chirp();
}

void set_config_value(ExperimentConfig& ec, const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  if (key == "experiment") {
    ec.experiment = v;
  } else if (key == "n") {
    ec.n = static_cast<int>(to_int(key, v));
  } else if (key == "t_us") {
    ec.t_us = to_double(key, v);
  } else if (key == "c1_num") {
    ec.c1_num = to_double(key, v);
  } else if (key == "c1_den") {
    ec.c1_den = v;
  } else if (key == "c2_num") {
    ec.c2_num = to_double(key, v);
  } else if (key == "c2_den") {
    ec.c2_den = v;
  } else if (key == "beta") {
    ec.beta = to_double(key, v);
  } else if (key == "q") {
    ec.q = static_cast<int>(to_int(key, v));
  } else if (key == "oversample") {
    ec.oversample = static_cast<int>(to_int(key, v));
  } else if (key == "profile") {
    try {
      parse_profile(v);
    } catch (const std::invalid_argument&) {
      throw ConfigError("invalid value for key 'profile': " + v);
    }
    ec.profile = v;
  } else if (key == "fc_hz") {
    ec.fc_hz = to_double(key, v);
  } else if (key == "speed_kmh") {
    ec.speed_kmh = to_double(key, v);
  } else if (key == "trials") {
    ec.trials = static_cast<int>(to_int(key, v));
  } else if (key == "seed") {
    ec.seed = static_cast<std::uint64_t>(to_int(key, v));
  } else if (key == "sweep") {
    ec.sweep = parse_sweep(v);
  } else if (key == "sweep_values") {
    ec.sweep_values.clear();
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (!item.empty()) ec.sweep_values.push_back(to_double(key, item));
    }
  } else if (key == "frames") {
    ec.frames = static_cast<int>(to_int(key, v));
  } else if (key == "nfft") {
    ec.nfft = static_cast<int>(to_int(key, v));
  } else if (key == "rbw_subcarriers") {
    ec.rbw_subcarriers = static_cast<int>(to_int(key, v));
  } else if (key == "c_index") {
    ec.c_index = to_double(key, v);
  } else if (key == "n_od") {
    ec.n_od = static_cast<int>(to_int(key, v));
  } else if (key == "pulse_model") {
    try {
      ec.pulse_model = parse_pulse_model(v);
    } catch (const std::invalid_argument&) {
      throw ConfigError("invalid value for key 'pulse_model': " + v);
    }
  } else if (key == "channel_csv") {
    ec.channel_csv = v;
  } else {
    throw ConfigError("unknown config key: " + key);
  }
}

ExperimentConfig parse_config_text(const std::string& text, ExperimentConfig base) {
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
    }
    set_config_value(base, trim(line.substr(0, eq)), line.substr(eq + 1));
  }
  return base;
}

ExperimentConfig load_config(const std::string& path, ExperimentConfig base) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config file: " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_config_text(ss.str(), std::move(base));
}

}  // namespace chirpwave
