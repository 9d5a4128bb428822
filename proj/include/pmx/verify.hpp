#pragma once

// Named end-to-end checks and their JSON reports.
//
// Report schema (keys in this order):
//   {check, params{...}, status, witnesses[...], elapsed_ms, seed, field}
// status is one of pass, fail, skip(budget), inconclusive. elapsed_ms is null
// unless timing was requested, so reports for a fixed spec are byte-identical.
//
// Every fail carries a witness. These kinds can be rechecked from the JSON
// alone by revalidate():
//   membership  {polynomial, ideal_generators, member}   member is the observed verdict
//   point       {matrix, polynomial, value}
//   identity    {n, t, rows, cols, form}                  nonzero difference at that pair
//   codim       {ideal_generators, codim}
//   estimate    {config, hits}

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pmx/ideal.hpp"
#include "pmx/minors.hpp"
#include "pmx/parse.hpp"
#include "pmx/strata.hpp"
#include "pmx/toric.hpp"

namespace pmx {

using Json = nlohmann::ordered_json;

enum class Status { pass, fail, skip_budget, inconclusive };

inline std::string to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skip_budget: return "skip(budget)";
    default: return "inconclusive";
  }
}

struct CheckSpec {
  std::string name;
  std::optional<std::size_t> n;
  std::optional<std::size_t> t;
  FieldSpec field;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> samples;
  std::optional<std::uint32_t> q;
  Budget budget;
  Method method = Method::automatic;
  Estimator estimator = Estimator::fiber;
  bool corrupt_f = false;  // flip the sign of one term of f (mutation testing)
  bool timing = false;
  unsigned threads = 0;
};

struct Report {
  std::string check;
  Json params = Json::object();
  Status status = Status::inconclusive;
  Json witnesses = Json::array();
  std::optional<double> elapsed_ms;
  std::uint64_t seed = 0;
  std::string field;

  Json to_json() const {
    Json j;
    j["check"] = check;
    j["params"] = params;
    j["status"] = to_string(status);
    j["witnesses"] = witnesses;
    j["elapsed_ms"] = elapsed_ms ? Json(*elapsed_ms) : Json(nullptr);
    j["seed"] = seed;
    j["field"] = field;
    return j;
  }
};

class UnknownCheck : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = {
      "p2-ci",    "p2-prime",   "p2-normal",  "muir",    "duality",   "q-codim",   "min-primes",
      "height-bound", "qminors", "n4-reduced", "n4-linked", "n4-fgen", "n4-colon", "witnesses",
      "multigrade", "strata",   "conj-explore"};
  return names;
}

namespace detail {

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

template <class F>
Json poly_list(const std::vector<Polynomial<F>>& gens) {
  Json out = Json::array();
  for (const auto& g : gens) out.push_back(g.to_string());
  return out;
}

template <class F>
Json membership_witness(const Polynomial<F>& f, const Ideal<F>& ideal, bool member, const std::string& label) {
  return Json{{"kind", "membership"},
              {"label", label},
              {"polynomial", f.to_string()},
              {"ideal_generators", poly_list(ideal.generators())},
              {"member", member}};
}

inline Json info(const std::string& label, Json value) {
  return Json{{"kind", "info"}, {"label", label}, {"value", std::move(value)}};
}

inline Json matrix_json(const std::vector<std::vector<long long>>& m) {
  Json out = Json::array();
  for (const auto& row : m) out.push_back(row);
  return out;
}

/// First generator of `a` outside `b`, as a membership witness.
template <class F>
std::optional<Json> not_contained(const Ideal<F>& a, const Ideal<F>& b, const std::string& label, const Budget& budget) {
  auto gb = b.groebner(TermOrder::grevlex(), budget);
  for (const auto& g : a.generators())
    if (!gb->contains(g, budget)) return membership_witness(g, b, false, label);
  return std::nullopt;
}

/// Witnesses for a != b, empty when the ideals agree.
template <class F>
std::vector<Json> ideal_mismatch(const Ideal<F>& a, const Ideal<F>& b, const std::string& a_name,
                                 const std::string& b_name, const Budget& budget) {
  std::vector<Json> out;
  if (auto w = not_contained(a, b, a_name + " generator outside " + b_name, budget)) out.push_back(*w);
  if (auto w = not_contained(b, a, b_name + " generator outside " + a_name, budget)) out.push_back(*w);
  return out;
}

/// Runs one check body with a concrete field type.
template <class F>
class CheckRun {
 public:
  using Poly = Polynomial<F>;

  CheckRun(const CheckSpec& spec, F field, Report& report) : spec_(spec), field_(std::move(field)), report_(report) {}

  const Budget& budget() const { return spec_.budget; }

  RingPtr<F> ring(std::size_t n) const { return matrix_ring(field_, n); }

  void add(Json w) { report_.witnesses.push_back(std::move(w)); }

  /// Records a failing condition; the report fails once any requirement does.
  void require(bool ok, Json witness) {
    if (!ok) {
      failed_ = true;
      add(std::move(witness));
    }
  }
  void require(bool ok, std::vector<Json> witnesses) {
    if (!ok) {
      failed_ = true;
      for (auto& w : witnesses) add(std::move(w));
    }
  }

  bool failed() const { return failed_; }

  /// f, or its sign-flipped mutant when the spec asks for one.
  Poly f(const RingPtr<F>& r) const {
    auto f = f_polynomial(r);
    if (!spec_.corrupt_f) return f;
    auto terms = f.terms();
    terms.front().coeff = field_.neg(terms.front().coeff);
    return Poly::from_terms(r, std::move(terms));
  }

  Json codim_witness(const Ideal<F>& ideal, std::size_t c, const std::string& label) const {
    return Json{{"kind", "codim"}, {"label", label}, {"ideal_generators", poly_list(ideal.generators())}, {"codim", c}};
  }

 private:
  const CheckSpec& spec_;
  F field_;
  Report& report_;
  bool failed_ = false;
};

inline std::size_t param(const std::optional<std::size_t>& v, std::size_t fallback) { return v ? *v : fallback; }

inline void require_range(const char* what, std::size_t v, std::size_t lo, std::size_t hi) {
  if (v < lo || v > hi)
    throw std::invalid_argument(std::string(what) + " must lie in " + std::to_string(lo) + ".." + std::to_string(hi));
}

template <class F>
void check_p2_ci(CheckRun<F>& run, std::size_t n) {
  auto r = run.ring(n);
  auto p2 = principal_minor_ideal(r, 2);
  const std::size_t c = codim(p2, run.budget()), expected = binomial(n, 2);
  run.add(info("codim", c));
  run.add(info("generators", p2.size()));
  run.add(info("expected", expected));
  run.require(c == expected && p2.size() == expected, run.codim_witness(p2, c, "codim P2 against C(n,2)"));
}

template <class F>
void check_p2_prime(CheckRun<F>& run, std::size_t n) {
  auto r = run.ring(n);
  auto cert = p2_prime_certificate(r, run.budget());
  run.add(info("binomial", cert.binomial));
  run.add(info("lattice_rank", cert.lattice_rank));
  run.add(info("invariant_factors", cert.invariant_factors));
  run.add(info("lattice_ideal_equals_P2", cert.ideal_matches));
  if (cert.holds()) return;
  if (!cert.ideal_matches && cert.binomial && cert.saturated) {
    // recompute to produce a checkable witness
    auto p2 = principal_minor_ideal(r, 2);
    auto lat = lattice_ideal(r, binomial_exponent_lattice(p2), run.budget());
    if (auto w = not_contained(lat, p2, "lattice ideal element outside P2", run.budget())) {
      run.require(false, *w);
      return;
    }
  }
  run.require(false, info("certificate", cert.witness));
}

template <class F>
void check_p2_normal(CheckRun<F>& run, std::size_t n) {
  auto r = run.ring(n);
  auto p2 = principal_minor_ideal(r, 2);
  const std::size_t c = codim(p2, run.budget());
  // Jacobian minors grow past 5000 at n = 4; that case reports skip(budget)
  auto sing = singular_locus_codim(p2, run.budget(), 5000);
  run.add(info("codim", c));
  run.add(info("singular_locus_codim", sing ? Json(*sing) : Json("empty")));
  if (sing && *sing < c + 2) {
    run.require(false, info("singular_locus_codim_below", Json{{"codim", c}, {"singular", *sing}}));
  }
}

template <class F>
void check_muir(CheckRun<F>& run, std::size_t n, std::optional<std::size_t> t) {
  auto r = run.ring(n);
  const std::size_t lo = t ? *t : 1, hi = t ? *t : n;
  for (std::size_t s = lo; s <= hi; ++s) {
    auto res = muir_verify(r, s);
    run.add(info("t=" + std::to_string(s) + " pairs checked", res.checked));
    if (!res.holds)
      run.require(false, Json{{"kind", "identity"},
                              {"form", "muir"},
                              {"n", n},
                              {"t", s},
                              {"rows", res.failing->rows},
                              {"cols", res.failing->cols},
                              {"residual", res.residual}});
  }
}

template <class F>
void check_duality(CheckRun<F>& run, std::size_t n, std::optional<std::size_t> t) {
  auto r = run.ring(n);
  const std::size_t lo = t ? *t : 1, hi = t ? *t : n - 1;
  for (std::size_t s = lo; s <= hi; ++s) {
    auto res = inversion_duality_verify(r, s);
    run.add(info("t=" + std::to_string(s) + " subsets checked", res.checked));
    if (!res.holds)
      run.require(false, Json{{"kind", "identity"},
                              {"form", "duality"},
                              {"n", n},
                              {"t", s},
                              {"rows", res.failing->rows},
                              {"cols", res.failing->cols},
                              {"residual", res.residual}});
  }
}

template <class F>
void check_q_codim(CheckRun<F>& run, std::size_t n) {
  auto r = run.ring(n);
  auto q = q_ideal(r, run.budget(), Method::automatic);
  const std::size_t c = codim(q, run.budget());
  run.add(info("generators", q.size()));
  run.add(info("codim", c));
  run.require(c == n, run.codim_witness(q, c, "codim Q against n"));
}

/// The 4-cycle matrix of (1 2 3 4), row i carrying a one in column tau(i).
inline std::vector<std::vector<long long>> four_cycle() { return {{0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}}; }

template <class F>
Json point_witness(const Polynomial<F>& g, const std::vector<std::vector<long long>>& m, const std::string& label) {
  auto point = flatten<F>(scalar_matrix(g.field(), m));
  auto v = g.evaluate(std::span<const typename F::Element>(point));
  return Json{{"kind", "point"}, {"label", label}, {"matrix", matrix_json(m)}, {"polynomial", g.to_string()},
              {"value", g.field().to_string(v)}};
}

template <class F>
void check_min_primes(CheckRun<F>& run, std::size_t n) {
  auto r = run.ring(n);
  const auto& b = run.budget();
  auto p = principal_minor_ideal(r, n - 1);
  auto i = determinantal_ideal(r, n - 1);
  auto q = q_ideal(r, b);
  if (auto w = not_contained(p, i, "P generator outside I", b)) run.require(false, *w);
  if (auto w = not_contained(p, q, "P generator outside Q", b)) run.require(false, *w);
  auto i_out = not_contained(i, q, "I generator outside Q", b);
  auto q_out = not_contained(q, i, "Q generator outside I", b);
  run.require(i_out.has_value(), info("I contained in Q", true));
  run.require(q_out.has_value(), info("Q contained in I", true));
  if (i_out) run.add(*i_out);
  if (q_out) run.add(*q_out);
  // the 4-cycle point lies on V(Q) but off V(I)
  if (n == 4) {
    auto cyc = four_cycle();
    for (const auto& g : q.generators()) {
      auto w = point_witness(g, cyc, "Q generator at 4-cycle");
      run.require(w["value"] == "0", w);
    }
    std::optional<Json> off;
    for (const auto& g : i.generators()) {
      auto w = point_witness(g, cyc, "I generator at 4-cycle");
      if (w["value"] != "0") {
        off = w;
        break;
      }
    }
    run.require(off.has_value(), info("4-cycle on V(I)", true));
    if (off) run.add(*off);
  }
  const std::size_t cp = codim(p, b), ci = codim(i, b), cq = codim(q, b);
  run.add(info("codims P I Q", Json::array({cp, ci, cq})));
  run.require(cp == 4, run.codim_witness(p, cp, "codim P"));
  run.require(ci == 4, run.codim_witness(i, ci, "codim I"));
  run.require(cq == n, run.codim_witness(q, cq, "codim Q"));
}

template <class F>
void check_height_bound(CheckRun<F>& run, std::size_t n, std::size_t t) {
  auto r = run.ring(n);
  auto p = principal_minor_ideal(r, t);
  const std::size_t c = codim(p, run.budget());
  const long long bound =
      static_cast<long long>(binomial(n + 1, 2)) - static_cast<long long>(binomial(t + 2, 2)) + 4;
  run.add(info("codim", c));
  run.add(info("bound", bound));
  run.require(static_cast<long long>(c) <= bound, run.codim_witness(p, c, "codim above bound"));
}

template <class F>
void check_qminors(CheckRun<F>& run, std::size_t n) {
  auto r = run.ring(n);
  auto q = q_ideal(r, run.budget());
  auto gb = q.groebner(TermOrder::grevlex(), run.budget());
  auto x = generic_matrix(r);
  for (std::size_t s = 1; s + 1 < n; ++s) {
    std::size_t checked = 0;
    for (const auto& rows : index_subsets(n, s))
      for (const auto& cols : index_subsets(n, s)) {
        auto m = minor(x, IndexPair{rows, cols}, r);
        ++checked;
        if (gb->contains(m, run.budget())) run.require(false, membership_witness(m, q, true, "minor inside Q"));
      }
    run.add(info("size " + std::to_string(s) + " minors checked", checked));
  }
}

template <class F>
void check_n4_reduced(CheckRun<F>& run) {
  auto r = run.ring(4);
  const auto& b = run.budget();
  auto p = principal_minor_ideal(r, 3);
  auto meet = intersect(determinantal_ideal(r, 3), q_ideal(r, b), b);
  run.add(info("intersection generators", meet.size()));
  auto w = ideal_mismatch(meet, p, "I3 cap Q3", "P3", b);
  run.require(w.empty(), w);
}

template <class F>
void check_n4_linked(CheckRun<F>& run, Method method) {
  auto r = run.ring(4);
  const auto& b = run.budget();
  auto p = principal_minor_ideal(r, 3);
  auto i = determinantal_ideal(r, 3);
  auto q = q_ideal(r, b);
  auto pi = colon_ideal(p, i, b, method);
  auto pq = colon_ideal(p, q, b, method);
  auto w1 = ideal_mismatch(pi, q, "P3:I3", "Q3", b);
  auto w2 = ideal_mismatch(pq, i, "P3:Q3", "I3", b);
  run.add(info("P3:I3 equals Q3", w1.empty()));
  run.add(info("P3:Q3 equals I3", w2.empty()));
  run.require(w1.empty(), w1);
  run.require(w2.empty(), w2);
}

template <class F>
void check_n4_fgen(CheckRun<F>& run, Method method) {
  auto r = run.ring(4);
  const auto& b = run.budget();
  auto p = principal_minor_ideal(r, 3);
  auto f = run.f(r);
  auto sat = saturate(p, determinant_of_generic(r), b, method);
  auto q = q_ideal(r, b, method);
  auto gens = p.generators();
  gens.push_back(f);
  Ideal<F> pf(r, gens);
  run.add(info("f", f.to_string()));
  run.add(info("Q3 generators", q.size()));
  auto w = ideal_mismatch(sat, pf, "P3:Delta^inf", "P3+(f)", b);
  run.require(w.empty(), w);
  const bool f_in_p = ideal_member(f, p, b);
  run.require(!f_in_p, membership_witness(f, p, true, "f inside P3"));
  run.require(q.size() == 5, info("Q3 minimal generators", poly_list(q.generators())));
}

template <class F>
void check_n4_colon(CheckRun<F>& run, Method method) {
  auto r = run.ring(4);
  const auto& b = run.budget();
  auto p = principal_minor_ideal(r, 3);
  auto delta = determinant_of_generic(r);
  auto col = colon(p, delta, b, method);
  auto q = q_ideal(r, b, method);
  auto w = ideal_mismatch(col, q, "P3:Delta", "Q3", b);
  run.add(info("P3:Delta equals Q3", w.empty()));
  run.require(w.empty(), w);
  auto fd = run.f(r) * delta;
  const bool in = ideal_member(fd, p, b);
  run.add(info("f*Delta in P3", in));
  run.require(in, membership_witness(fd, p, false, "f*Delta outside P3"));
}

template <class F>
void check_witnesses(CheckRun<F>& run, std::size_t n) {
  auto r = run.ring(n);
  const F& k = r->field();
  auto gens = principal_minors(r, n - 1);
  auto delta = determinant_of_generic(r);
  auto check_point = [&](const std::vector<std::vector<long long>>& m, const std::string& label,
                         std::optional<long long> det) {
    for (const auto& g : gens) {
      auto w = point_witness(g, m, label + ": principal minor");
      run.require(w["value"] == "0", w);
    }
    auto dw = point_witness(delta, m, label + ": determinant");
    auto point = flatten<F>(scalar_matrix(k, m));
    auto dv = delta.evaluate(std::span<const typename F::Element>(point));
    const bool ok = det ? k.equal(dv, k.from_int(*det))
                        : (k.equal(dv, k.one()) || k.equal(dv, k.from_int(-1)));
    run.require(ok, dw);
  };
  if (n == 4) check_point(example_rank4_witness(), "rank-4 example", -1);
  std::size_t count = 0;
  for (const auto& perm : derangements(n)) {
    std::vector<std::vector<long long>> m(n, std::vector<long long>(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][perm[i] - 1] = 1;
    check_point(m, "derangement", std::nullopt);
    ++count;
  }
  run.add(info("derangements checked", count));
}

template <class F>
void check_multigrade(CheckRun<F>& run) {
  auto r = run.ring(4);
  auto f = run.f(r);
  auto md = multidegree(f);
  const Multidegree ones{{1, 1, 1, 1}, {1, 1, 1, 1}};
  run.add(info("multidegree f", md ? Json(md->to_string()) : Json("not multihomogeneous")));
  run.require(md && *md == ones, info("f multidegree", md ? Json(md->to_string()) : Json("not multihomogeneous")));
  auto mus = principal_minors(r, 3);
  // index_subsets lists {1,2,3} first, which omits 4
  for (std::size_t s = 0; s < mus.size(); ++s) {
    auto d = multidegree(mus[s]);
    run.require(d.has_value(), info("principal minor not multihomogeneous", mus[s].to_string()));
    if (d) run.add(info("multidegree minor " + std::to_string(s + 1), d->to_string()));
  }
}

}  // namespace detail

/// Runs one registered check. Budget overruns become skip(budget);
/// invalid parameters and unknown names throw.
inline Report run_check(const CheckSpec& spec) {
  using namespace detail;
  const auto& names = check_names();
  if (std::find(names.begin(), names.end(), spec.name) == names.end()) throw UnknownCheck("unknown check '" + spec.name + "'");

  Report report;
  report.check = spec.name;
  report.seed = spec.seed;
  report.field = spec.field.name();
  auto& params = report.params;

  std::size_t n = 0;
  std::optional<std::size_t> t = spec.t;
  const std::string& name = spec.name;
  if (name == "p2-ci" || name == "p2-prime" || name == "p2-normal") {
    n = param(spec.n, 3);
    require_range("n", n, 2, name == "p2-ci" ? 5 : 4);
  } else if (name == "muir" || name == "duality") {
    n = param(spec.n, 4);
    require_range("n", n, name == "muir" ? 1 : 2, 5);
    if (t) require_range("t", *t, 1, name == "muir" ? n : n - 1);
  } else if (name == "q-codim" || name == "qminors") {
    n = param(spec.n, 4);
    require_range("n", n, name == "q-codim" ? 2 : 3, 5);
  } else if (name == "min-primes") {
    n = param(spec.n, 4);
    require_range("n", n, 4, 5);
  } else if (name == "height-bound") {
    n = param(spec.n, 4);
    require_range("n", n, 1, 5);
    t = param(spec.t, n - 1 ? n - 1 : 1);
    require_range("t", *t, 1, n);
  } else if (name == "witnesses") {
    n = param(spec.n, 4);
    require_range("n", n, 2, 5);
  } else if (name == "strata") {
    n = param(spec.n, 4);
    require_range("n", n, 2, 5);
    t = param(spec.t, n - 1);
    require_range("t", *t, 1, n - 1);
  } else if (name == "conj-explore") {
    n = param(spec.n, 5);
    require_range("n", n, 2, 5);
  } else {
    n = param(spec.n, 4);
    if (n != 4) throw std::invalid_argument(name + " is defined for n = 4 only");
  }
  params["n"] = n;
  if (t) params["t"] = *t;
  if (name == "n4-fgen" || name == "n4-colon" || name == "multigrade") params["corrupt_f"] = spec.corrupt_f;
  if (name.rfind("n4-", 0) == 0) params["method"] = to_string(spec.method);
  params["budget_pairs"] = spec.budget.max_pairs;
  params["budget_terms"] = spec.budget.max_terms;

  const auto start = std::chrono::steady_clock::now();
  if (name == "strata") {
    SampleConfig cfg;
    cfg.n = n;
    cfg.t = *t;
    cfg.q = spec.q ? *spec.q : (n - *t <= 1 ? 101 : 5);
    cfg.samples = spec.samples ? *spec.samples : 10'000'000;
    cfg.invertible = true;
    cfg.seed = spec.seed;
    cfg.estimator = spec.estimator;
    cfg.threads = spec.threads;
    cfg.validate();
    params["q"] = cfg.q;
    params["samples"] = cfg.samples;
    params["estimator"] = to_string(cfg.estimator);
    report.field = FieldSpec{cfg.q}.name();
    auto expected = expected_stratum_codim(n, *t);
    auto est = estimate_codim(cfg);
    Json e{{"kind", "estimate"},
           {"config", {{"n", n}, {"t", *t}, {"q", cfg.q}, {"samples", cfg.samples}, {"seed", cfg.seed},
                       {"estimator", to_string(cfg.estimator)}, {"invertible", true}}},
           {"hits", est.hits},
           {"trials", est.trials},
           {"frequency", est.frequency},
           {"estimate", est.estimate ? Json(*est.estimate) : Json(nullptr)},
           {"ci", {est.ci_low ? Json(*est.ci_low) : Json(nullptr), est.ci_high ? Json(*est.ci_high) : Json(nullptr)}},
           {"wide_ci", est.wide_ci},
           {"expected", expected ? Json(*expected) : Json(nullptr)}};
    report.witnesses.push_back(e);
    if (!est.estimate || !expected) report.status = Status::inconclusive;
    else report.status = std::abs(*est.estimate - static_cast<double>(*expected)) <= 0.5 ? Status::pass : Status::fail;
  } else {
    try {
      with_field(spec.field, [&](auto field) {
        using F = decltype(field);
        CheckRun<F> run(spec, field, report);
        if (name == "p2-ci") check_p2_ci(run, n);
        else if (name == "p2-prime") check_p2_prime(run, n);
        else if (name == "p2-normal") check_p2_normal(run, n);
        else if (name == "muir") check_muir(run, n, t);
        else if (name == "duality") check_duality(run, n, t);
        else if (name == "q-codim") check_q_codim(run, n);
        else if (name == "min-primes") check_min_primes(run, n);
        else if (name == "height-bound") check_height_bound(run, n, *t);
        else if (name == "qminors") check_qminors(run, n);
        else if (name == "n4-reduced") check_n4_reduced(run);
        else if (name == "n4-linked") check_n4_linked(run, spec.method);
        else if (name == "n4-fgen") check_n4_fgen(run, spec.method);
        else if (name == "n4-colon") check_n4_colon(run, spec.method);
        else if (name == "witnesses") check_witnesses(run, n);
        else if (name == "multigrade") check_multigrade(run);
        else if (name == "conj-explore") {
          auto r = run.ring(n);
          auto p = principal_minor_ideal(r, n - 1);
          auto q = saturate(p, determinant_of_generic(r), run.budget());
          auto mins = minimal_generators(q, run.budget());
          std::vector<std::uint32_t> degrees;
          for (const auto& g : mins) degrees.push_back(g.total_degree());
          run.add(info("saturation generators", mins.size()));
          run.add(info("generator degrees", degrees));
          run.add(info("codim P", codim(p, run.budget())));
          run.add(info("codim saturation", codim(q, run.budget())));
          run.add(info("saturation strictly larger", !contains(p, q, run.budget())));
        }
        report.status = run.failed() ? Status::fail : Status::pass;
      });
    } catch (const BudgetExceeded& e) {
      report.witnesses = Json::array();
      report.witnesses.push_back(Json{{"kind", "budget"}, {"resource", e.resource()}, {"limit", e.limit()}});
      report.status = Status::skip_budget;
    }
    // a conjecture never passes or fails
    if (name == "conj-explore") report.status = Status::inconclusive;
  }
  if (spec.timing)
    report.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

struct SuiteResult {
  std::vector<Report> reports;
  int exit_code = 0;

  Json to_json() const {
    Json arr = Json::array();
    std::map<std::string, std::size_t> counts{{"pass", 0}, {"fail", 0}, {"skip(budget)", 0}, {"inconclusive", 0}};
    for (const auto& r : reports) {
      arr.push_back(r.to_json());
      ++counts[to_string(r.status)];
    }
    Json summary;
    summary["total"] = reports.size();
    for (const char* k : {"pass", "fail", "skip(budget)", "inconclusive"}) summary[k] = counts[k];
    summary["exit_code"] = exit_code;
    return Json{{"reports", arr}, {"summary", summary}};
  }
};

/// Exit code 0 iff no check failed; skips and inconclusive results do not fail.
inline SuiteResult run_suite(const std::vector<CheckSpec>& specs) {
  if (specs.empty()) throw std::invalid_argument("run_suite: no checks");
  SuiteResult out;
  for (const auto& s : specs) {
    out.reports.push_back(run_check(s));
    if (out.reports.back().status == Status::fail) out.exit_code = 1;
  }
  return out;
}

/// The default suite: every check at the sizes its claim covers, sharing
/// field, seed, budgets and method from `shared`.
inline std::vector<CheckSpec> default_suite(const CheckSpec& shared) {
  std::vector<CheckSpec> out;
  auto add = [&](const std::string& name, std::optional<std::size_t> n = std::nullopt,
                 std::optional<std::size_t> t = std::nullopt) {
    CheckSpec s = shared;
    s.name = name;
    s.n = n;
    s.t = t;
    out.push_back(s);
  };
  for (std::size_t n : {2, 3, 4}) add("p2-ci", n);
  for (std::size_t n : {2, 3, 4}) add("p2-prime", n);
  add("p2-normal", 3);
  for (std::size_t n : {2, 3, 4}) add("muir", n);
  for (std::size_t n : {2, 3, 4}) add("duality", n);
  for (std::size_t n : {2, 3, 4}) add("q-codim", n);
  add("min-primes", 4);
  add("height-bound", 2, 1);
  add("height-bound", 4, 2);
  add("height-bound", 4, 3);
  add("qminors", 4);
  add("n4-reduced");
  add("n4-linked");
  add("n4-fgen");
  add("n4-colon");
  for (std::size_t n : {3, 4, 5}) add("witnesses", n);
  add("multigrade");
  add("strata", 3, 2);
  add("strata", 4, 3);
  add("strata", 4, 2);
  return out;
}

/// Rechecks a witness from its JSON alone. Returns true when the recorded
/// observation reproduces.
inline bool revalidate(const Json& witness, std::size_t n, const FieldSpec& field) {
  const std::string kind = witness.value("kind", "");
  if (kind == "estimate") {
    const auto& c = witness["config"];
    SampleConfig cfg;
    cfg.n = c["n"];
    cfg.t = c["t"];
    cfg.q = c["q"];
    cfg.samples = c["samples"];
    cfg.seed = c["seed"];
    cfg.estimator = parse_estimator(c["estimator"]);
    cfg.invertible = c["invertible"];
    return estimate_codim(cfg).hits == witness["hits"].get<std::uint64_t>();
  }
  return with_field(field, [&](auto k) -> bool {
    using F = decltype(k);
    auto ring = matrix_ring(k, kind == "identity" ? witness["n"].get<std::size_t>() : n);
    auto ideal_of = [&](const Json& gens) {
      std::vector<Polynomial<F>> g;
      for (const auto& s : gens) g.push_back(parse_polynomial(ring, s.get<std::string>()));
      return Ideal<F>(ring, g);
    };
    if (kind == "membership") {
      auto f = parse_polynomial(ring, witness["polynomial"].get<std::string>());
      return ideal_member(f, ideal_of(witness["ideal_generators"])) == witness["member"].get<bool>();
    }
    if (kind == "point") {
      std::vector<std::vector<long long>> m = witness["matrix"];
      auto f = parse_polynomial(ring, witness["polynomial"].get<std::string>());
      auto point = flatten<F>(scalar_matrix(k, m));
      return k.to_string(f.evaluate(std::span<const typename F::Element>(point))) == witness["value"].get<std::string>();
    }
    if (kind == "codim") return codim(ideal_of(witness["ideal_generators"])) == witness["codim"].get<std::size_t>();
    if (kind == "identity") {
      const std::size_t t = witness["t"];
      IndexPair p{witness["rows"].get<std::vector<std::size_t>>(), witness["cols"].get<std::vector<std::size_t>>()};
      auto x = generic_matrix(ring);
      auto adj = adjugate(x, ring);
      auto scale = poly_det(x, ring).pow(static_cast<unsigned>(t - 1));
      auto rhs = witness["form"] == "muir"
                     ? scale * cofactor(x, IndexPair{p.cols, p.rows}, ring)
                     : scale * minor(x, IndexPair{complement(p.rows, ring->matrix_size()), complement(p.cols, ring->matrix_size())}, ring);
      return !(minor(adj, p, ring) - rhs).is_zero();
    }
    return false;
  });
}

}  // namespace pmx
