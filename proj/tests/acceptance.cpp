// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "beliefnet/beliefnet.hpp"
#include "instances.hpp"
#include "oracle_step.hpp"

namespace fs = std::filesystem;
using namespace beliefnet;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::vector<std::uint64_t> shared_seeds() {
  std::vector<std::uint64_t> s;
  for (std::uint64_t i = 1; i <= 10; ++i) s.push_back(i);
  return s;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Worst doubly-stochastic residual over every network built by this suite.
double g_worst_stochastic = 0.0;
std::size_t g_networks = 0;

RunOutput tracked(const SimConfig& cfg) {
  auto run = run_config(cfg);
  g_worst_stochastic = std::max(g_worst_stochastic, run.weights.stochastic_error());
  if (!run.weights.is_symmetric()) g_worst_stochastic = INFINITY;
  ++g_networks;
  return run;
}

RunOutput tracked_trial(TrialKind kind, nlohmann::json overrides, std::uint64_t seed) {
  overrides["seed"] = seed;
  return tracked(trial_config(kind, nlohmann::json::object(), overrides));
}

double max_pressure_after(const Trajectory& traj, std::size_t step) {
  double mx = 0.0;
  for (const auto& st : traj)
    if (st.step > step)
      for (double p : st.pressure) mx = std::max(mx, p);
  return mx;
}

// 1. Random initialization on a giant component.
Outcome random_trial() {
  const auto t0 = std::chrono::steady_clock::now();
  double sum_std = 0, sum_range = 0, sum_late = 0;
  double worst_std = 0, worst_range = 0, worst_late = 0;
  for (auto seed : shared_seeds()) {
    const auto run = tracked_trial(TrialKind::RandomGiant, {}, seed);
    const double range = run.stats.final_max - run.stats.final_min;
    const double late = max_pressure_after(run.trajectory, 5);
    sum_std += run.stats.final_std;
    sum_range += range;
    sum_late += late;
    worst_std = std::max(worst_std, run.stats.final_std);
    worst_range = std::max(worst_range, range);
    worst_late = std::max(worst_late, late);
  }
  const double secs = seconds_since(t0);
  const double std = sum_std / 10, range = sum_range / 10, late = sum_late / 10;
  const bool pass = std <= 0.01 && range <= 0.05 && late <= 0.02 && secs <= 5.0;
  return {pass, fmt("seed-mean std=%.5f (<=0.01) range=%.4f (<=0.05) max P after step 5=%.4f (<=0.02) "
                    "time=%.2fs (<=5); worst seed std=%.5f range=%.4f P=%.4f",
                    std, range, late, secs, worst_std, worst_range, worst_late)};
}

// 2. c = 0 reduces to averaging: consensus at the initial mean.
Outcome zero_self_confidence() {
  const auto run = tracked_trial(TrialKind::RandomGiant, {{"c", 0.0}}, SimConfig{}.seed);
  const bool connected = is_connected(run.graph);
  const double dev = std::abs(run.stats.final_mean - mean(run.trajectory.front().beliefs));
  const bool pass = connected && run.stats.final_std < 1e-6 && dev <= 1e-6;
  return {pass, fmt("default-seed ER(k=10) connected=%s final std=%.3e (<1e-6) |consensus-mean(X0)|=%.3e (<=1e-6)",
                    connected ? "yes" : "no", run.stats.final_std, dev)};
}

// 3. c = 1 collapses beliefs onto self-reasoning.
Outcome full_self_confidence() {
  std::size_t states = 0;
  bool pass = true;
  for (auto kind : {TrialKind::RandomGiant, TrialKind::PolarizedCommunities, TrialKind::PolarizedGiant}) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const auto run = tracked_trial(kind, {{"c", 1.0}}, seed);
      for (const auto& st : run.trajectory) {
        ++states;
        pass &= st.beliefs == st.self_reasoning;
        pass &= std::all_of(st.pressure.begin(), st.pressure.end(), [](double p) { return p == 0.0; });
      }
    }
  }
  return {pass, fmt("%zu states over 3 trial kinds x 3 seeds: X == S and P == 0 exactly", states)};
}

// 4. Pressure is exactly zero at step 0.
Outcome pressure_at_origin() {
  std::size_t configs = 0;
  double worst = 0.0;
  for (auto kind : {TrialKind::RandomGiant, TrialKind::PolarizedCommunities, TrialKind::PolarizedGiant}) {
    for (double c : {0.0, 0.25, 0.5, 1.0}) {
      for (std::uint64_t m : {1u, 5u}) {
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
          const auto run = tracked_trial(kind, {{"c", c}, {"m", m}, {"n", 200}}, seed);
          const auto& p0 = run.trajectory.front().pressure;
          worst = std::max(worst, *std::max_element(p0.begin(), p0.end()));
          ++configs;
        }
      }
    }
  }
  return {worst == 0.0, fmt("%zu configurations, max step-0 pressure = %g", configs, worst)};
}

// 5. Complementary pairs stay complementary.
Outcome complement_pairs() {
  double worst = 0.0;
  for (auto kind : {TrialKind::PolarizedCommunities, TrialKind::PolarizedGiant}) {
    for (auto seed : shared_seeds()) {
      const auto run = tracked_trial(kind, {}, seed);
      const std::size_t m = run.config.m;
      for (const auto& st : run.trajectory)
        for (std::size_t p = 0; p < st.agents(); ++p)
          for (std::size_t j = 0; j < m; ++j)
            worst = std::max(worst, std::abs(st.confidence(p, j) + st.confidence(p, j + m) - 1.0));
    }
  }
  return {worst <= 1e-12, fmt("a=0.8, both polarized networks, 10 seeds, 41 states: max |b_j + b_{j+m} - 1| = %.3e (<=1e-12)", worst)};
}

// 6. Doubly stochastic weights (checked last so it covers every run).
Outcome doubly_stochastic() {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    for (double k : {2.0, 4.0, 10.0, 40.0}) {
      const auto w = sinkhorn_normalize(generate_er(400, k, seed));
      g_worst_stochastic = std::max(g_worst_stochastic, w.is_symmetric() ? w.stochastic_error() : INFINITY);
      ++g_networks;
    }
  }
  bool rejected = false;
  try {
    sinkhorn_normalize(Graph(3, {{0, 1}, {1, 2}}), false, 1e-9, 1000);
  } catch (const NotScalableError&) {
    rejected = true;
  }
  const bool pass = g_worst_stochastic <= 1e-9 && rejected;
  return {pass, fmt("%zu networks, max |row/col sum - 1| = %.3e (<=1e-9), symmetric; path without self-loops %s",
                    g_networks, g_worst_stochastic, rejected ? "rejected as not scalable" : "NOT rejected")};
}

// 7. Engine agrees with the dense reference stepper.
Outcome oracle_equivalence() {
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto inst = testing::random_instance(seed);
    const auto engine = advance(inst.state, inst.weights, inst.understanding, inst.self_conf);
    const auto ref = testing::oracle_step(inst.state, inst.weights, inst.understanding, inst.self_conf);
    worst = std::max(worst, testing::max_deviation(engine, ref));
  }
  return {worst <= 1e-12, fmt("100 instances (n<=6, m<=3): max deviation = %.3e (<=1e-12)", worst)};
}

// 8. Polarized population: giant component vs two communities.
Outcome polarized_comparison() {
  double giant_std = 0, comm_std = 0, giant_p = 0, comm_p = 0;
  double lo_max = 1, hi_max = 0;
  for (auto seed : shared_seeds()) {
    const auto g = tracked_trial(TrialKind::PolarizedGiant, {}, seed);
    const auto c = tracked_trial(TrialKind::PolarizedCommunities, {}, seed);
    giant_std += g.stats.final_std / 10;
    comm_std += c.stats.final_std / 10;
    giant_p += g.stats.mean_pressure / 10;
    comm_p += c.stats.mean_pressure / 10;
    for (double mx : {g.stats.max_pressure, c.stats.max_pressure}) {
      lo_max = std::min(lo_max, mx);
      hi_max = std::max(hi_max, mx);
    }
  }
  const bool std_ok = giant_std < comm_std;
  const bool pressure_ok = giant_p > comm_p;
  const bool range_ok = lo_max >= 0.05 && hi_max <= 0.3;
  return {std_ok && pressure_ok && range_ok,
          fmt("std giant=%.5f < communities=%.5f [%s]; mean pressure giant=%.5f > communities=%.5f [%s]; "
              "per-run max pressure in [%.3f, %.3f] within [0.05, 0.3] [%s]",
              giant_std, comm_std, std_ok ? "ok" : "FAIL", giant_p, comm_p, pressure_ok ? "ok" : "FAIL",
              lo_max, hi_max, range_ok ? "ok" : "FAIL")};
}

// 9. Sweep shapes.
Outcome sweeps() {
  const auto t0 = std::chrono::steady_clock::now();
  const SimConfig base;
  auto curve = [&](SweepParameter p, std::vector<double> values, std::vector<double> cs) {
    std::vector<double> out;
    for (const auto& pt : seed_average(sweep(p, values, cs, shared_seeds(), base))) out.push_back(pt.mean_std);
    g_networks += values.size() * cs.size() * 10;
    return out;
  };
  const auto by_c = curve(SweepParameter::Connectivity, {10}, {0, 0.25, 0.5, 0.75, 1});
  const auto by_n = curve(SweepParameter::Population, {100, 200, 400, 800}, {0.5});
  const auto by_k = curve(SweepParameter::Connectivity, {10, 15, 20, 25, 30, 35, 40}, {0.5});
  const auto by_m = curve(SweepParameter::EvidenceCount, {2, 5, 10, 20}, {0.5});
  const double secs = seconds_since(t0);

  auto list = [](const std::vector<double>& v) {
    std::string s;
    for (double x : v) s += (s.empty() ? "" : ",") + fmt("%.5f", x);
    return s;
  };
  const bool c_ok = std::is_sorted(by_c.begin(), by_c.end());
  bool n_ok = true;
  for (std::size_t i = 1; i < by_n.size(); ++i) n_ok &= by_n[i] < by_n[i - 1];
  const auto [kmin, kmax] = std::minmax_element(by_k.begin(), by_k.end());
  const double k_rel = (*kmax - *kmin) / mean(by_k);
  const bool k_ok = k_rel < 0.3;
  bool m_ok = true;
  for (std::size_t i = 1; i < by_m.size(); ++i) m_ok &= by_m[i] <= by_m[i - 1];
  const bool time_ok = secs <= 300;
  return {c_ok && n_ok && k_ok && m_ok && time_ok,
          fmt("c{0..1}: %s nondecreasing [%s]; n{100..800}: %s decreasing [%s]; k{10..40}: (max-min)/mean=%.3f "
              "<0.3 [%s]; m{2,5,10,20}: %s nonincreasing [%s]; time=%.1fs (<=300)",
              list(by_c).c_str(), c_ok ? "ok" : "FAIL", list(by_n).c_str(), n_ok ? "ok" : "FAIL", k_rel,
              k_ok ? "ok" : "FAIL", list(by_m).c_str(), m_ok ? "ok" : "FAIL", secs)};
}

// 10. The CLI reproduces its output byte for byte.
Outcome cli_determinism() {
  const fs::path dir = fs::temp_directory_path() / "beliefnet_acceptance_determinism";
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::size_t compared = 0;
  bool pass = true;
  for (const char* kind : {"random_giant", "polarized_communities", "polarized_giant"}) {
    for (const char* run : {"a", "b"}) {
      const std::string cmd = std::string("'") + BELIEFNET_CLI + "' trial " + kind +
                              " --seed 7 --record-confidence --out '" + (dir / kind / run).string() +
                              "' 2>/dev/null";
      const int status = std::system(cmd.c_str());
      if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) return {false, fmt("trial %s exited abnormally", kind)};
    }
    for (const char* f : {"trajectory.csv", "confidence.csv", "nodes.csv", "edges.csv", "summary.json"}) {
      pass &= read_file(dir / kind / "a" / f) == read_file(dir / kind / "b" / f);
      ++compared;
    }
  }
  fs::remove_all(dir);
  return {pass, fmt("3 trials run twice with --seed 7: %zu file pairs byte-identical=%s", compared, pass ? "yes" : "no")};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> check;
  };
  // Criterion 6 runs last so its residual covers every network built above.
  const std::vector<Criterion> criteria = {
      {1, "random-init trial", random_trial},
      {2, "c=0 reduction", zero_self_confidence},
      {3, "c=1 collapse", full_self_confidence},
      {4, "pressure at origin", pressure_at_origin},
      {5, "complement-pair invariant", complement_pairs},
      {7, "oracle equivalence", oracle_equivalence},
      {8, "polarized comparison", polarized_comparison},
      {9, "sweep monotonicity", sweeps},
      {10, "CLI determinism", cli_determinism},
      {6, "doubly stochastic weights", doubly_stochastic},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("[%s] %2d %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed ? 1 : 0;
}
