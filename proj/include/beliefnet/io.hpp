#pragma once

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "beliefnet/config.hpp"
#include "beliefnet/dynamics.hpp"
#include "beliefnet/error.hpp"
#include "beliefnet/experiments.hpp"
#include "beliefnet/graph.hpp"

namespace beliefnet {

// 12 significant digits, locale independent.
inline std::string format_real(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

inline void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path.string(), "cannot open for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.flush();
  if (!out) throw IoError(path.string(), "write failed");
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path.string(), "cannot open for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// step,agent,belief,self_reasoning,pressure
inline void write_trajectory(const Trajectory& traj, const std::filesystem::path& path) {
  std::string s = "step,agent,belief,self_reasoning,pressure\n";
  for (const auto& st : traj) {
    for (std::size_t p = 0; p < st.agents(); ++p) {
      s += std::to_string(st.step);
      s += ',';
      s += std::to_string(p);
      s += ',';
      s += format_real(st.beliefs[p]);
      s += ',';
      s += format_real(st.self_reasoning[p]);
      s += ',';
      s += format_real(st.pressure[p]);
      s += '\n';
    }
  }
  write_file(path, s);
}

/// step,agent,evidence,confidence
inline void write_confidence(const Trajectory& traj, const std::filesystem::path& path) {
  std::string s = "step,agent,evidence,confidence\n";
  for (const auto& st : traj) {
    const auto& b = st.confidence;
    for (std::size_t p = 0; p < b.agents(); ++p) {
      for (std::size_t e = 0; e < b.slots(); ++e) {
        s += std::to_string(st.step) + ',' + std::to_string(p) + ',' + std::to_string(e) + ',' +
             format_real(b(p, e)) + '\n';
      }
    }
  }
  write_file(path, s);
}

/// nodes.csv (agent,group,degree) and edges.csv (src,dst,weight) in dir.
/// Edge rows have src < dst, plus src == dst rows for diagonal weights.
inline void write_network(const Graph& graph, const WeightMatrix& weights,
                          const std::filesystem::path& dir) {
  if (weights.size() != graph.size()) throw DimensionError("weights do not match graph size");
  const auto deg = graph.degrees();
  std::string nodes = "agent,group,degree\n";
  for (std::size_t v = 0; v < graph.size(); ++v) {
    nodes += std::to_string(v) + ',' + std::to_string(graph.group(v)) + ',' + std::to_string(deg[v]) + '\n';
  }
  std::string edges = "src,dst,weight\n";
  for (std::size_t i = 0; i < weights.size(); ++i) {
    for (const auto& [j, w] : weights.row(i)) {
      if (j < i) continue;
      edges += std::to_string(i) + ',' + std::to_string(j) + ',' + format_real(w) + '\n';
    }
  }
  write_file(dir / "nodes.csv", nodes);
  write_file(dir / "edges.csv", edges);
}

inline nlohmann::ordered_json summary_json(const SimConfig& cfg, const Trajectory& traj) {
  const RunStats st = summarize(traj);
  nlohmann::ordered_json j;
  j["config"] = to_json(cfg);
  j["steps_recorded"] = traj.size();
  j["final_mean"] = st.final_mean;
  j["final_std"] = st.final_std;
  j["final_min"] = st.final_min;
  j["final_max"] = st.final_max;
  j["mean_pressure"] = st.mean_pressure;
  j["max_pressure"] = st.max_pressure;
  j["std_series"] = st.std_series;
  return j;
}

inline void write_summary(const SimConfig& cfg, const Trajectory& traj, const std::filesystem::path& path) {
  write_file(path, summary_json(cfg, traj).dump(2) + "\n");
}

/// parameter,value,c,seed,final_std,final_mean,mean_pressure,max_pressure
/// Rows are written sorted by (value, c, seed).
inline void write_sweep(std::span<const SweepResult> results, const std::filesystem::path& path) {
  std::vector<SweepResult> rows(results.begin(), results.end());
  std::stable_sort(rows.begin(), rows.end(), [](const SweepResult& a, const SweepResult& b) {
    if (a.value != b.value) return a.value < b.value;
    if (a.c != b.c) return a.c < b.c;
    return a.seed < b.seed;
  });
  std::string s = "parameter,value,c,seed,final_std,final_mean,mean_pressure,max_pressure\n";
  for (const auto& r : rows) {
    s += r.parameter + ',' + format_real(r.value) + ',' + format_real(r.c) + ',' + std::to_string(r.seed) +
         ',' + format_real(r.final_std) + ',' + format_real(r.final_mean) + ',' +
         format_real(r.mean_pressure) + ',' + format_real(r.max_pressure) + '\n';
  }
  write_file(path, s);
}

/// Minimal reader for the files above: header plus comma-split rows.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    throw DimensionError("no column named " + std::string(name));
  }
};

inline CsvTable read_csv(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  CsvTable t;
  std::size_t pos = 0;
  bool first = true;
  while (pos < text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    std::vector<std::string> fields;
    std::size_t start = pos;
    while (true) {
      auto comma = text.find(',', start);
      if (comma == std::string::npos || comma > eol) {
        fields.emplace_back(text.substr(start, eol - start));
        break;
      }
      fields.emplace_back(text.substr(start, comma - start));
      start = comma + 1;
    }
    if (first) t.header = std::move(fields);
    else t.rows.push_back(std::move(fields));
    first = false;
    pos = eol + 1;
  }
  return t;
}

}  // namespace beliefnet
