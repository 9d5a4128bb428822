// pmx: principal minor ideals from the command line.
//
// Exit codes: 0 success (including budget skips), 1 computation failure or a
// failing check, 2 usage error.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "pmx/pmx.hpp"

namespace {

using namespace pmx;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::optional<std::size_t> n, t;
  std::string field;
  std::string order = "grevlex";
  std::string method = "automatic";
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> samples;
  std::optional<std::uint64_t> budget_pairs, budget_terms;
  std::string json;

  Budget budget() const {
    Budget b;
    if (const char* env = std::getenv("PMX_BUDGET_PAIRS")) {
      try {
        std::size_t used = 0;
        b.max_pairs = std::stoull(env, &used);
        if (used != std::string(env).size()) throw std::invalid_argument(env);
      } catch (const std::exception&) {
        throw UsageError(std::string("PMX_BUDGET_PAIRS is not a number: ") + env);
      }
    }
    if (budget_pairs) b.max_pairs = *budget_pairs;
    if (budget_terms) b.max_terms = *budget_terms;
    return b;
  }

  FieldSpec field_spec(std::optional<FieldSpec> fallback = std::nullopt) const {
    if (!field.empty()) return FieldSpec::parse(field);
    return fallback ? *fallback : FieldSpec{};
  }

  TermOrder term_order() const { return order == "lex" ? TermOrder::lex() : TermOrder::grevlex(); }

  Method method_kind() const {
    if (method == "elimination") return Method::elimination;
    if (method == "last_variable") return Method::last_variable;
    return Method::automatic;
  }
};

void add_common(CLI::App* cmd, Common& c, bool ring_flags = true) {
  if (ring_flags) {
    cmd->add_option("--n", c.n, "matrix size")->check(CLI::Range(1, 5));
    cmd->add_option("--t", c.t, "minor size")->check(CLI::Range(1, 5));
  }
  cmd->add_option("--field", c.field, "coefficient field: Q or Fp:<p> (default Fp:32003)");
  cmd->add_option("--order", c.order, "term order")->check(CLI::IsMember({"grevlex", "lex"}));
  cmd->add_option("--method", c.method, "colon/saturation route")
      ->check(CLI::IsMember({"automatic", "elimination", "last_variable"}));
  cmd->add_option("--seed", c.seed, "random seed");
  cmd->add_option("--samples", c.samples, "sample count")->check(CLI::PositiveNumber);
  cmd->add_option("--budget-pairs", c.budget_pairs, "S-pair budget (overrides PMX_BUDGET_PAIRS)");
  cmd->add_option("--budget-terms", c.budget_terms, "polynomial term budget");
  cmd->add_option("--json", c.json, "write a JSON result to this path");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_json(const std::string& path, const Json& j) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
}

/// Loads an ideal file into a ring of the file's size, over --field when
/// given and the file's field otherwise.
template <class F>
Ideal<F> load_ideal(const RingPtr<F>& ring, const IdealText& text) {
  return Ideal<F>(ring, parse_generators(ring, text.generators));
}

void print_lines(const std::vector<std::string>& lines) {
  for (const auto& l : lines) std::cout << l << '\n';
}

template <class F>
std::vector<std::string> to_lines(const std::vector<Polynomial<F>>& gens) {
  std::vector<std::string> out;
  for (const auto& g : gens) out.push_back(g.to_string());
  return out;
}


/// Runs fn(ring, ideal) for an ideal file, in the requested field.
template <class Fn>
int with_ideal_file(const Common& c, const std::string& path, Fn&& fn) {
  auto text = parse_ideal_text(read_file(path));
  if (c.n && *c.n != text.n) throw UsageError("--n disagrees with the ideal file header");
  return with_field(c.field_spec(text.field), [&](auto k) {
    auto ring = matrix_ring(k, text.n, c.term_order());
    return fn(ring, load_ideal(ring, text), text);
  });
}

int report_status(const Report& r) {
  std::cout << r.check << ": " << to_string(r.status) << '\n';
  for (const auto& w : r.witnesses) std::cout << "  " << w.dump() << '\n';
  return r.status == Status::fail ? 1 : 0;
}

CheckSpec check_spec(const Common& c, const std::string& name) {
  CheckSpec s;
  s.name = name;
  s.n = c.n;
  s.t = c.t;
  s.field = c.field_spec();
  s.seed = c.seed;
  s.samples = c.samples;
  s.budget = c.budget();
  s.method = c.method_kind();
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pmx: principal minor ideals of generic matrices"};
  app.require_subcommand(1);
  app.fallthrough(false);

  Common c;
  std::string file_a, file_b, poly_text, kind = "principal", estimator = "fiber", csv_path, check_name;
  std::vector<std::string> suite_names;
  std::optional<std::uint32_t> q;
  std::optional<std::size_t> rank;
  bool invertible = false, corrupt_f = false, timing = false;

  auto gb = app.add_subcommand("gb", "reduced Groebner basis of an ideal file");
  gb->add_option("ideal", file_a, "ideal file")->required();
  add_common(gb, c);

  auto nf = app.add_subcommand("nf", "normal form of a polynomial modulo an ideal file");
  nf->add_option("ideal", file_a, "ideal file")->required();
  nf->add_option("--poly", poly_text, "polynomial")->required();
  add_common(nf, c);

  auto member = app.add_subcommand("member", "ideal membership");
  member->add_option("ideal", file_a, "ideal file")->required();
  member->add_option("--poly", poly_text, "polynomial")->required();
  add_common(member, c);

  auto inter = app.add_subcommand("intersect", "intersection of two ideal files");
  inter->add_option("ideal", file_a, "ideal file")->required();
  inter->add_option("other", file_b, "ideal file")->required();
  add_common(inter, c);

  auto col = app.add_subcommand("colon", "I : f, or I : J with a second ideal file");
  col->add_option("ideal", file_a, "ideal file")->required();
  auto col_other = col->add_option("other", file_b, "ideal file for I : J");
  auto col_poly = col->add_option("--poly", poly_text, "polynomial f for I : f");
  col_poly->excludes(col_other);
  add_common(col, c);

  auto sat = app.add_subcommand("saturate", "I : f^inf");
  sat->add_option("ideal", file_a, "ideal file")->required();
  sat->add_option("--poly", poly_text, "polynomial f")->required();
  add_common(sat, c);

  auto cod = app.add_subcommand("codim", "codimension of an ideal file");
  cod->add_option("ideal", file_a, "ideal file")->required();
  add_common(cod, c);

  auto ideal = app.add_subcommand("ideal", "print a named ideal as an ideal file");
  ideal->add_option("--kind", kind, "principal, determinantal, q or f")
      ->check(CLI::IsMember({"principal", "determinantal", "q", "f"}));
  add_common(ideal, c);

  auto count = app.add_subcommand("count", "exhaustive census of V(P_t) over F_q by rank");
  count->add_option("--q", q, "prime q")->required();
  count->add_option("--csv", csv_path, "write the census as CSV");
  add_common(count, c);

  auto est = app.add_subcommand("estimate", "Monte Carlo codimension of a stratum of V(P_t)");
  est->add_option("--q", q, "prime q")->required();
  est->add_option("--rank", rank, "sample matrices of this rank");
  est->add_flag("--invertible", invertible, "count only matrices with nonzero determinant");
  est->add_option("--estimator", estimator, "naive or fiber")->check(CLI::IsMember({"naive", "fiber"}));
  add_common(est, c);

  auto ver = app.add_subcommand("verify", "run one named check");
  ver->add_option("check", check_name, "check name")->required()->check(CLI::IsMember(check_names()));
  ver->add_option("--q", q, "prime q (strata)");
  ver->add_option("--estimator", estimator, "naive or fiber (strata)")->check(CLI::IsMember({"naive", "fiber"}));
  ver->add_flag("--corrupt-f", corrupt_f, "flip the sign of one term of f");
  ver->add_flag("--timing", timing, "record elapsed_ms");
  add_common(ver, c);

  auto suite = app.add_subcommand("suite", "run several checks (default: the full suite)");
  suite->add_option("checks", suite_names, "check names")->check(CLI::IsMember(check_names()));
  suite->add_flag("--corrupt-f", corrupt_f, "flip the sign of one term of f");
  suite->add_flag("--timing", timing, "record elapsed_ms");
  add_common(suite, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*gb) {
      return with_ideal_file(c, file_a, [&](auto ring, auto I, const IdealText&) {
        auto basis = I.groebner(ring->order(), c.budget());
        auto lines = to_lines(basis->elements());
        print_lines(lines);
        write_json(c.json, Json{{"command", "gb"}, {"order", c.order}, {"basis", lines}});
        return 0;
      });
    }
    if (*nf || *member) {
      return with_ideal_file(c, file_a, [&](auto ring, auto I, const IdealText&) {
        auto f = parse_polynomial(ring, poly_text);
        auto basis = I.groebner(ring->order(), c.budget());
        auto r = basis->normal_form(f, c.budget());
        if (*nf) {
          std::cout << r.to_string() << '\n';
          write_json(c.json, Json{{"command", "nf"}, {"normal_form", r.to_string()}});
        } else {
          std::cout << (r.is_zero() ? "true" : "false") << '\n';
          write_json(c.json, Json{{"command", "member"}, {"member", r.is_zero()}});
        }
        return 0;
      });
    }
    if (*inter) {
      auto other = parse_ideal_text(read_file(file_b));
      return with_ideal_file(c, file_a, [&](auto ring, auto I, const IdealText& text) {
        if (other.n != text.n) throw UsageError("ideal files have different matrix sizes");
        auto J = load_ideal(ring, other);
        auto lines = to_lines(intersect(I, J, c.budget()).generators());
        print_lines(lines);
        write_json(c.json, Json{{"command", "intersect"}, {"generators", lines}});
        return 0;
      });
    }
    if (*col) {
      if (poly_text.empty() && file_b.empty()) throw UsageError("colon needs --poly or a second ideal file");
      return with_ideal_file(c, file_a, [&](auto ring, auto I, const IdealText& text) {
        using IdealT = decltype(I);
        IdealT result;
        if (!poly_text.empty()) {
          result = colon(I, parse_polynomial(ring, poly_text), c.budget(), c.method_kind());
        } else {
          auto other = parse_ideal_text(read_file(file_b));
          if (other.n != text.n) throw UsageError("ideal files have different matrix sizes");
          result = colon_ideal(I, load_ideal(ring, other), c.budget(), c.method_kind());
        }
        auto lines = to_lines(result.generators());
        print_lines(lines);
        write_json(c.json, Json{{"command", "colon"}, {"method", c.method}, {"generators", lines}});
        return 0;
      });
    }
    if (*sat) {
      return with_ideal_file(c, file_a, [&](auto ring, auto I, const IdealText&) {
        auto lines = to_lines(saturate(I, parse_polynomial(ring, poly_text), c.budget(), c.method_kind()).generators());
        print_lines(lines);
        write_json(c.json, Json{{"command", "saturate"}, {"method", c.method}, {"generators", lines}});
        return 0;
      });
    }
    if (*cod) {
      return with_ideal_file(c, file_a, [&](auto, auto I, const IdealText&) {
        auto v = codim(I, c.budget());
        std::cout << v << '\n';
        write_json(c.json, Json{{"command", "codim"}, {"codim", v}});
        return 0;
      });
    }
    if (*ideal) {
      if (!c.n) throw UsageError("ideal needs --n");
      const std::size_t n = *c.n;
      return with_field(c.field_spec(), [&](auto k) {
        auto ring = matrix_ring(k, n, c.term_order());
        using F = decltype(k);
        std::vector<Polynomial<F>> gens;
        if (kind == "principal" || kind == "determinantal") {
          if (!c.t) throw UsageError(kind + " needs --t");
          if (*c.t > n) throw UsageError("--t exceeds --n");
          gens = kind == "principal" ? principal_minors(ring, *c.t) : determinantal_ideal(ring, *c.t).generators();
        } else if (kind == "q") {
          if (n < 2) throw UsageError("q needs n >= 2");
          gens = q_ideal(ring, c.budget(), c.method_kind()).generators();
        } else {
          if (n != 4) throw UsageError("f lives in the 4x4 ring");
          gens = {f_polynomial(ring)};
        }
        std::cout << format_ideal_file(n, gens);
        write_json(c.json, Json{{"command", "ideal"}, {"kind", kind}, {"n", n}, {"field", k.name()},
                                {"generators", to_lines(gens)}});
        return 0;
      });
    }
    if (*count) {
      if (!c.n || !c.t) throw UsageError("count needs --n and --t");
      auto table = exhaustive_count(*c.n, *q, *c.t);
      std::cout << table.csv();
      if (!csv_path.empty()) {
        std::ofstream out(csv_path);
        if (!out) throw std::runtime_error("cannot write " + csv_path);
        out << table.csv();
      }
      write_json(c.json, Json{{"command", "count"}, {"n", table.n}, {"q", table.q}, {"t", table.t},
                              {"by_rank", table.in_variety}, {"all_by_rank", table.all}});
      return 0;
    }
    if (*est) {
      if (!c.n || !c.t) throw UsageError("estimate needs --n and --t");
      SampleConfig cfg;
      cfg.n = *c.n;
      cfg.t = *c.t;
      cfg.q = *q;
      cfg.samples = c.samples ? *c.samples : 1'000'000;
      cfg.rank = rank;
      cfg.invertible = invertible;
      cfg.seed = c.seed;
      cfg.estimator = rank && est->count("--estimator") == 0 ? Estimator::naive : parse_estimator(estimator);
      auto e = estimate_codim(cfg);
      std::cout << "hits " << e.hits << " of " << e.trials << " trials\n"
                << "frequency " << e.frequency << '\n';
      if (e.estimate) {
        std::cout << "codim estimate " << *e.estimate << " (95% interval " << *e.ci_low << " .. "
                  << (e.ci_high ? std::to_string(*e.ci_high) : std::string("inf")) << ")"
                  << (e.wide_ci ? " [interval wider than +-0.5]" : "") << '\n';
      } else {
        std::cout << "status insufficient samples\n";
      }
      write_json(c.json, Json{{"command", "estimate"},
                              {"config", {{"n", cfg.n}, {"t", cfg.t}, {"q", cfg.q}, {"samples", cfg.samples},
                                          {"rank", rank ? Json(*rank) : Json(nullptr)}, {"invertible", invertible},
                                          {"seed", cfg.seed}, {"estimator", to_string(cfg.estimator)}}},
                              {"status", e.status()},
                              {"hits", e.hits},
                              {"trials", e.trials},
                              {"frequency", e.frequency},
                              {"estimate", e.estimate ? Json(*e.estimate) : Json(nullptr)},
                              {"ci", {e.ci_low ? Json(*e.ci_low) : Json(nullptr), e.ci_high ? Json(*e.ci_high) : Json(nullptr)}},
                              {"wide_ci", e.wide_ci}});
      return 0;
    }
    if (*ver) {
      auto spec = check_spec(c, check_name);
      spec.q = q;
      spec.estimator = parse_estimator(estimator);
      spec.corrupt_f = corrupt_f;
      spec.timing = timing;
      auto r = run_check(spec);
      write_json(c.json, r.to_json());
      return report_status(r);
    }
    if (*suite) {
      auto shared = check_spec(c, "");
      shared.corrupt_f = corrupt_f;
      shared.timing = timing;
      std::vector<CheckSpec> specs;
      if (suite_names.empty()) {
        specs = default_suite(shared);
      } else {
        for (const auto& name : suite_names) {
          auto s = shared;
          s.name = name;
          specs.push_back(s);
        }
      }
      auto result = run_suite(specs);
      for (const auto& r : result.reports) report_status(r);
      auto j = result.to_json();
      std::cout << "summary " << j["summary"].dump() << '\n';
      write_json(c.json, j);
      return result.exit_code;
    }
  } catch (const BudgetExceeded& e) {
    std::cout << "status skip(budget): " << e.what() << '\n';
    write_json(c.json, Json{{"status", "skip(budget)"}, {"resource", e.resource()}, {"limit", e.limit()}});
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "pmx: " << e.what() << '\n';
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "pmx: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "pmx: " << e.what() << '\n';
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "pmx: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "pmx: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
