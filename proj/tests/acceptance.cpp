// Prints one PASS/FAIL line per acceptance criterion and exits nonzero if
// any criterion fails. Time limits are part of each criterion.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "pmx/pmx.hpp"

using namespace pmx;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void fail(const std::string& why) {
    ok = false;
    detail << " [" << why << "]";
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Report run(const std::string& name, std::optional<std::size_t> n, std::optional<std::size_t> t,
           const FieldSpec& field = FieldSpec{32003}) {
  CheckSpec s;
  s.name = name;
  s.n = n;
  s.t = t;
  s.field = field;
  return run_check(s);
}

std::string label(const Report& r) {
  std::string out = r.check;
  if (r.params.contains("n")) out += " n=" + std::to_string(r.params["n"].get<std::size_t>());
  if (r.params.contains("t")) out += " t=" + std::to_string(r.params["t"].get<std::size_t>());
  return out + " " + r.field;
}

// Requires pass and a per-check time limit.
void expect_pass(Outcome& o, const std::string& name, std::optional<std::size_t> n, std::optional<std::size_t> t,
                 const FieldSpec& field, double limit_s) {
  const auto start = Clock::now();
  auto r = run(name, n, t, field);
  const double took = seconds_since(start);
  if (r.status != Status::pass) o.fail(label(r) + ": " + to_string(r.status));
  if (took > limit_s) o.fail(label(r) + " took " + std::to_string(took) + " s");
}

Outcome p2_ci() {
  Outcome o;
  for (std::size_t n : {2, 3, 4}) expect_pass(o, "p2-ci", n, std::nullopt, FieldSpec{32003}, 10);
  return o;
}

Outcome p2_prime() {
  Outcome o;
  for (auto field : {FieldSpec{0}, FieldSpec{32003}})
    for (std::size_t n : {2, 3, 4}) expect_pass(o, "p2-prime", n, std::nullopt, field, 60);
  return o;
}

Outcome p2_normal() {
  Outcome o;
  expect_pass(o, "p2-normal", 3, std::nullopt, FieldSpec{32003}, 300);
  auto r4 = run("p2-normal", 4, std::nullopt);
  if (r4.status == Status::fail) o.fail("n=4 failed");
  o.detail << " n=4 " << to_string(r4.status);
  return o;
}

Outcome muir() {
  Outcome o;
  const auto start = Clock::now();
  for (std::size_t n : {2, 3, 4}) expect_pass(o, "muir", n, std::nullopt, FieldSpec{32003}, 60);
  if (seconds_since(start) > 60) o.fail("over 60 s total");
  return o;
}

Outcome duality() {
  Outcome o;
  for (std::size_t n : {2, 3, 4}) expect_pass(o, "duality", n, std::nullopt, FieldSpec{32003}, 60);
  return o;
}

Outcome n4_sweep() {
  Outcome o;
  const std::vector<std::string> checks{"n4-reduced", "n4-linked", "n4-fgen", "n4-colon", "min-primes"};
  for (std::uint32_t p : {2u, 3u, 5u, 32003u}) {
    const auto start = Clock::now();
    for (const auto& c : checks) expect_pass(o, c, 4, std::nullopt, FieldSpec{p}, 600);
    if (seconds_since(start) > 600) o.fail("Fp:" + std::to_string(p) + " over 10 min");
  }
  // characteristic zero is attempted; only a fail counts against it
  std::size_t passed = 0;
  for (const auto& c : checks) {
    auto r = run(c, 4, std::nullopt, FieldSpec{0});
    if (r.status == Status::fail) o.fail(label(r) + ": fail");
    passed += r.status == Status::pass;
  }
  o.detail << " Q " << passed << "/" << checks.size() << " pass";
  return o;
}

Outcome qminors() {
  Outcome o;
  expect_pass(o, "qminors", 4, std::nullopt, FieldSpec{32003}, 300);
  return o;
}

Outcome height_bound() {
  Outcome o;
  for (auto [n, t] : {std::pair<std::size_t, std::size_t>{2, 1}, {4, 2}, {4, 3}})
    expect_pass(o, "height-bound", n, t, FieldSpec{32003}, 600);
  return o;
}

Outcome witnesses() {
  Outcome o;
  const auto start = Clock::now();
  for (std::size_t n : {3, 4, 5}) expect_pass(o, "witnesses", n, std::nullopt, FieldSpec{32003}, 1);
  if (seconds_since(start) >= 1) o.fail("over 1 s");
  return o;
}

Outcome strata() {
  Outcome o;
  for (auto [n, t] : {std::pair<std::size_t, std::size_t>{3, 2}, {4, 3}, {4, 2}}) {
    const auto start = Clock::now();
    auto r = run("strata", n, t);
    const double took = seconds_since(start);
    const auto& w = r.witnesses[0];
    o.detail << " Y(" << n << "," << t << ") q=" << w["config"]["q"] << " c=";
    if (w["estimate"].is_null()) o.detail << "none";
    else o.detail << std::round(w["estimate"].get<double>() * 100) / 100;
    if (r.status != Status::pass) o.fail(label(r) + ": " + to_string(r.status));
    if (took > 120) o.fail(label(r) + " over 2 min");
  }
  return o;
}

Outcome census() {
  Outcome o;
  const std::uint64_t samples = 200000;
  for (auto [n, q, t] : {std::tuple<std::size_t, std::uint32_t, std::size_t>{2, 2, 1}, {2, 2, 2}, {2, 3, 1},
                         {2, 3, 2}, {4, 2, 3}}) {
    auto table = exhaustive_count(n, q, t);
    auto sampled = sample_census(n, q, t, samples, 1);
    for (std::size_t r = 0; r <= n; ++r) {
      const double p = static_cast<double>(table.in_variety[r]) / static_cast<double>(table.total());
      const double sigma = std::sqrt(samples * p * (1 - p));
      if (std::abs(static_cast<double>(sampled[r]) - p * samples) > 3 * sigma)
        o.fail("n=" + std::to_string(n) + " q=" + std::to_string(q) + " rank " + std::to_string(r) + " outside 3 sigma");
    }
  }
  // V(P_1) is the zero-diagonal locus: exactly q^(n^2 - n) points
  for (auto [n, q] : {std::pair<std::size_t, std::uint32_t>{2, 2}, {2, 3}, {3, 2}, {4, 2}}) {
    auto table = exhaustive_count(n, q, 1);
    std::uint64_t qn = 1;
    for (std::size_t i = 0; i < n; ++i) qn *= q;
    if (table.variety_total() * qn != table.total())
      o.fail("V(P1) n=" + std::to_string(n) + " q=" + std::to_string(q) + " frequency not q^-n");
  }
  return o;
}

Outcome properties() {
  Outcome o;
#ifdef PMX_PROPERTIES_BIN
  const std::string cmd = std::string("\"") + PMX_PROPERTIES_BIN + "\" --gtest_brief=1 > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  if (rc != 0) o.fail("property binary exited with " + std::to_string(rc));
  o.detail << " ran " << PMX_PROPERTIES_BIN;
#else
  o.fail("property binary location not configured");
#endif
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"P2 complete intersection, n=2..4", p2_ci},
      {"P2 prime via toric certificate", p2_prime},
      {"P2 normal at n=3", p2_normal},
      {"Muir identity for all t, n=2..4", muir},
      {"inversion duality, n<=4", duality},
      {"n=4 ideal identities over F2, F3, F5, F32003", n4_sweep},
      {"no entry or 2-minor lies in Q3", qminors},
      {"height bound for P_t", height_bound},
      {"explicit witness matrices", witnesses},
      {"Monte Carlo stratum codimensions", strata},
      {"exhaustive census against the sampler", census},
      {"standalone property suites", properties},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = Clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double took = seconds_since(start);
    failed += !o.ok;
    std::printf("%s  %2zu  %-46s %8.2f s%s\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), took,
                o.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
