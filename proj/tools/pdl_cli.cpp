// Command-line front end: prove, sat, interpolate, beth, fuzz.
//
// Exit codes: 0 success / valid / sat, 1 negative answer, 2 usage or
// runtime error, 3 failed interpolant verification.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "pdl/json_io.hpp"
#include "pdl/pdl.hpp"
#include "pdl/properties.hpp"

namespace {

using nlohmann::ordered_json;

struct Options {
  bool json = false;
  bool verify = false;
  bool simplify = false;
  std::string dot;
  std::size_t budget = 1'000'000;
  std::uint64_t seed = 1;
};

pdl::Sequent parse_sequent(const std::string& text) {
  std::vector<pdl::Member> ms;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, ','))
    if (part.find_first_not_of(" \t") != std::string::npos) ms.emplace_back(pdl::parse_formula(part));
  return pdl::Sequent(std::move(ms));
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

pdl::ProverOptions prover_options(const Options& o) { return {o.budget, true}; }

int cmd_prove(const std::string& text, const Options& o) {
  pdl::Formula f = pdl::parse_formula(text);
  pdl::ProofResult r = pdl::prove(f, prover_options(o));
  if (r.closed && !o.dot.empty()) write_file(o.dot, pdl::export_dot(r.tableau));
  if (o.json) {
    ordered_json j;
    j["result"] = r.closed ? "valid" : "invalid";
    if (!r.closed) j["countermodel"] = pdl::model_to_json(r.model, r.point);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << (r.closed ? "valid" : "invalid") << "\n";
    if (!r.closed) std::cout << pdl::model_to_json(r.model, r.point).dump(2) << "\n";
  }
  return r.closed ? 0 : 1;
}

int cmd_sat(const std::string& text, const Options& o) {
  pdl::Sequent s = parse_sequent(text);
  pdl::ProofResult r = pdl::prove(s, prover_options(o));
  if (r.closed && !o.dot.empty()) write_file(o.dot, pdl::export_dot(r.tableau));
  if (o.json) {
    ordered_json j;
    j["result"] = r.closed ? "unsat" : "sat";
    if (!r.closed) j["model"] = pdl::model_to_json(r.model, r.point);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << (r.closed ? "unsat" : "sat") << "\n";
    if (!r.closed) std::cout << pdl::model_to_json(r.model, r.point).dump(2) << "\n";
  }
  return r.closed ? 1 : 0;
}

int cmd_interpolate(const std::string& lhs, const std::string& rhs, const Options& o) {
  pdl::Formula f = pdl::parse_formula(lhs);
  pdl::Formula g = pdl::parse_formula(rhs);
  pdl::InterpolationResult res = [&] {
    try {
      return pdl::interpolate_detailed(f, g, prover_options(o));
    } catch (const pdl::NotValid& e) {
      std::cout << "not valid\n" << pdl::model_to_json(e.model, e.point).dump(2) << "\n";
      throw;
    }
  }();
  if (!o.dot.empty()) write_file(o.dot, pdl::export_dot(res.tableau));
  pdl::Formula th = res.interpolant;
  bool equivalent = true;
  if (o.simplify) {
    pdl::Formula s = pdl::simplify(th);
    if (o.verify) equivalent = pdl::prove(pdl::make_iff(s, th), prover_options(o)).closed;
    th = s;
  }
  pdl::InterpolantReport rep;
  if (o.verify || o.json) rep = pdl::verify_interpolant(f, g, th, prover_options(o));
  if (o.json) {
    std::cout << pdl::interpolation_to_json(th, rep, res.stats).dump(2) << "\n";
  } else {
    std::cout << pdl::to_string(th) << "\n";
  }
  if (o.verify && (!rep.ok() || !equivalent)) {
    std::cerr << "interpolant verification failed (voc " << rep.voc_ok << ", left " << rep.left_ok << ", right "
              << rep.right_ok << ", simplification " << equivalent << ")\n";
    return 3;
  }
  return 0;
}

int cmd_beth(const std::string& text, const std::string& p, const Options& o) {
  pdl::Formula f = pdl::parse_formula(text);
  try {
    pdl::Formula d = pdl::beth(f, p, prover_options(o));
    if (o.simplify) d = pdl::simplify(d);
    if (o.json) {
      ordered_json j;
      j["definition"] = pdl::to_string(d);
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << pdl::to_string(d) << "\n";
    }
    return 0;
  } catch (const pdl::NotImplicitDefinition& e) {
    std::cout << "not an implicit definition\n" << pdl::model_to_json(e.model, e.point).dump(2) << "\n";
    return 1;
  }
}

int cmd_fuzz(const Options& o) {
  std::vector<pdl::SuiteReport> reports{pdl::unfold_suite(o.seed), pdl::rule_suite(o.seed),
                                        pdl::roundtrip_suite(o.seed), pdl::interpolation_suite(o.seed),
                                        pdl::beth_suite(o.seed)};
  bool ok = true;
  ordered_json all = ordered_json::array();
  for (const pdl::SuiteReport& r : reports) {
    ok = ok && r.ok();
    if (o.json) {
      all.push_back({{"suite", r.name}, {"cases", r.cases}, {"failures", r.failures}, {"first_failure", r.first_failure}});
    } else {
      std::cout << (r.ok() ? "ok   " : "FAIL ") << r.name << ": " << r.cases << " cases, " << r.failures
                << " failures";
      if (!r.ok()) std::cout << " (first: " << r.first_failure << ")";
      std::cout << "\n";
    }
  }
  if (o.json) std::cout << all.dump(2) << "\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decision procedure and interpolation for propositional dynamic logic"};
  app.require_subcommand(1);
  Options o;
  std::string a, b;

  auto common = [&](CLI::App* sub) {
    sub->add_flag("--json", o.json, "machine-readable output");
    sub->add_option("--budget", o.budget, "maximum number of search nodes")->check(CLI::PositiveNumber);
  };

  auto* prove = app.add_subcommand("prove", "decide validity of a formula");
  prove->add_option("formula", a, "formula")->required();
  prove->add_option("--dot", o.dot, "write the closed tableau as Graphviz");
  common(prove);

  auto* sat = app.add_subcommand("sat", "decide satisfiability of a comma-separated sequent");
  sat->add_option("sequent", a, "formulas separated by commas")->required();
  sat->add_option("--dot", o.dot, "write the closed tableau as Graphviz");
  common(sat);

  auto* itp = app.add_subcommand("interpolate", "interpolant for a valid implication phi -> psi");
  itp->add_option("phi", a, "antecedent")->required();
  itp->add_option("psi", b, "consequent")->required();
  itp->add_option("--dot", o.dot, "write the split tableau as Graphviz");
  itp->add_flag("--verify", o.verify, "re-check the interpolant with the prover");
  itp->add_flag("--simplify", o.simplify, "apply equivalence-preserving rewrites");
  common(itp);

  auto* beth = app.add_subcommand("beth", "explicit definition of an implicitly defined proposition");
  beth->add_option("formula", a, "formula")->required();
  beth->add_option("prop", b, "proposition to define")->required();
  beth->add_flag("--simplify", o.simplify, "apply equivalence-preserving rewrites");
  common(beth);

  auto* fuzz = app.add_subcommand("fuzz", "run the randomized property suites");
  fuzz->add_option("--seed", o.seed, "random seed");
  fuzz->add_flag("--json", o.json, "machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*prove) return cmd_prove(a, o);
    if (*sat) return cmd_sat(a, o);
    if (*itp) return cmd_interpolate(a, b, o);
    if (*beth) return cmd_beth(a, b, o);
    if (*fuzz) return cmd_fuzz(o);
  } catch (const pdl::NotValid&) {
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
