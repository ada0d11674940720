// Runs the ten acceptance criteria and prints one PASS/FAIL line for each.
// Exit status is nonzero when any criterion fails.

#include "qszego/suites.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace qszego;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

Outcome all_pass(const std::vector<CheckReport>& reports) {
  Outcome o;
  int failed = 0;
  double worst = 0;
  for (const auto& r : reports) {
    if (!r.pass) {
      ++failed;
      if (o.detail.empty()) o.detail = "first failure: " + r.name + " " + r.inputs.dump();
    }
    if (r.metric != "exact") worst = std::max(worst, r.deviation() / std::max(r.tolerance, 1e-300));
  }
  o.pass = failed == 0 && !reports.empty();
  if (o.pass) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%zu checks, worst deviation/tolerance %.3g", reports.size(), worst);
    o.detail = buf;
  } else {
    o.detail = std::to_string(failed) + "/" + std::to_string(reports.size()) + " failed; " + o.detail;
  }
  return o;
}

}  // namespace

int main() {
  suites::Settings settings;
  settings.n = 1;
  settings.seed = 2024;

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"kernel formula: D s = 0 and homogeneity, n = 1..4", [] { return all_pass(suites::kernel_formula(4)); }},
      {"complex case: m = 2 density equals the closed form, n = 1..4",
       [] { return all_pass(suites::complex_formula(4)); }},
      {"exponential moments: closed form vs quadrature, a in {1,2,4}, |l| <= 4",
       [] {
         auto reports = suites::prop32(4);
         Outcome o = all_pass(reports);
         const bool exact = prop32_closed_form(Rational(1), {0, 0, 0, 0}) == PiMonomial{Rational(8), 2};
         if (!exact) o = {false, "a = 1, l = 0 is not 8 pi"};
         return o;
       }},
      {"Newton derivative pairings: |p|, |q| <= 3 at x0 in {1/2, 1}", [] { return all_pass(suites::prop31(3)); }},
      {"coefficient system exact for n = 1, 2, 3", [] { return all_pass(suites::coefficient_systems(3)); }},
      {"F_lambda closed form on all parity-valid specs, lambda <= 6",
       [] {
         auto reports = suites::f_lambda_family(1, 6);
         Outcome o = all_pass(reports);
         SiegelPoint<Rational, 4> origin{{QuaternionQ()}, QuaternionQ::real(1)};
         const TestFunctionSpec spec{1, {2, 0, 0, 1}};
         const bool instance = f_lambda(spec, origin) == QuaternionQ{0, 0, 0, Rational(5, 8)} &&
                               f_lambda_closed_form(spec) == PiMonomial::rational(Rational(5, 8));
         if (!instance) o = {false, "t = (2,0,0,1) is not 0.625 e3 by both routes"};
         return o;
       }},
      {"reproducing integral, n = 1, t in {(2,0,0,1), (3,0,0,1)}, rel 1e-3",
       [&] { return all_pass(suites::reproducing(settings)); }},
      {"geometry: group axioms, height, Cayley round trip, action compatibility",
       [&] { return all_pass(suites::geometry(settings)); }},
      {"octonionic propositions: verdict agreement, implication, prop45, subharmonicity",
       [&] { return all_pass(suites::octonion(settings)); }},
      {"kernel estimates: dilation invariance and shell-stable suprema, n = 1",
       [&] { return all_pass(suites::kernel_estimates(settings)); }},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %zu: %s (%s; %.1f s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
