// greensign: constant-sign intervals of Green's functions from a problem file.
//
// Exit codes: 0 success, 2 property failure, 3 input error,
// 4 numerical not-found or singular.

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "greensign/characterize.hpp"
#include "greensign/problem_file.hpp"
#include "greensign/report.hpp"

using namespace greensign;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitProperty = 2;
constexpr int kExitInput = 3;
constexpr int kExitNumeric = 4;

constexpr int kDecomposeSamples = 21;

struct Options {
  std::string file;
  std::string space = "base";
  std::string direction = "least-positive";
  double M = 0.0;
  bool has_M = false;
  std::string out;
  std::string subsets;
};

const std::map<std::string, SpaceVariant> kSpaces{
    {"base", SpaceVariant::Base},
    {"drop-sigma-add-beta", SpaceVariant::DropSigmaK_AddBeta},
    {"add-alpha-drop-eps", SpaceVariant::AddAlpha_DropEpsLast},
    {"drop-sigma-add-alpha", SpaceVariant::DropSigmaK_AddAlpha},
    {"drop-eps-add-beta", SpaceVariant::DropEpsLast_AddBeta},
};

const std::map<std::string, Direction> kDirections{
    {"least-positive", Direction::LeastPositive},
    {"biggest-negative", Direction::BiggestNegative},
};

Json string_array(const std::vector<std::string>& v) {
  Json a = Json::array();
  for (const auto& s : v) a.push_back(s);
  return a;
}

void emit(const Json& report, const std::string& out) {
  const std::string text = dump_report(report);
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw InputError("cannot write '" + out + "'");
  f << text;
}

Json header(const char* command, const ProblemFile& pf) {
  Json r;
  r["command"] = command;
  r["inputs"] = inputs_json(pf);
  return r;
}

CharacterizeOptions characterize_options(const ProblemFile& pf) {
  CharacterizeOptions o;
  o.search = pf.search;
  o.td = pf.td;
  return o;
}

// Sign check of g at one M inside a characterized interval.
Json sample_sign(const ProblemFile& pf, const SignCharacterization& c, std::vector<std::string>& warnings) {
  double M;
  if (c.lower.infinite) {
    M = c.upper.value - (1.0 + std::fabs(c.upper.value));
  } else {
    M = 0.5 * (c.lower.value + c.upper.value);
  }
  Json j;
  j["M"] = M;
  try {
    GreenFunction gf = build_green(pf.spec, M, pf.n_t, pf.n_s, pf.search.steps);
    SignReport r = classify_sign(gf, derive_indices(pf.spec));
    j["report"] = sign_report_json(r);
    if (!c.necessary_only && r.classification != c.classification) {
      warnings.push_back("sampled Green's function at M=" + Json(M).dump() +
                         " does not have the characterized sign");
    }
  } catch (const SingularError& e) {
    j["report"] = nullptr;
    warnings.push_back(std::string("sign sample skipped: ") + e.what());
  }
  return j;
}

int cmd_check(const Options& o) {
  ProblemFile pf = load_problem_file(o.file);
  Json r = header("check", pf);
  const bool na = check_na(pf.spec.sigma, pf.spec.epsilon, pf.spec.n);
  r["indices"] = indices_json(derive_indices(pf.spec));
  r["na"] = na;
  r["nonexistence"] = nonexistence_json(nonexistence_check(pf.spec));
  Json adj = Json::array();
  for (const auto& f : adjoint_boundary_conditions(pf.spec)) adj.push_back(functional_json(f));
  r["adjoint_functionals"] = adj;
  Json coeffs = Json::array();
  for (const auto& q : adjoint_monic_coefficients(pf.spec)) coeffs.push_back(unparse(q));
  r["adjoint_coefficients"] = coeffs;
  r["warnings"] = Json::array();
  emit(r, o.out);
  return na ? kExitOk : kExitProperty;
}

int cmd_eigen(const Options& o) {
  ProblemFile pf = load_problem_file(o.file);
  Json r = header("eigen", pf);
  const SpaceDescriptor space = build_space(pf.spec, kSpaces.at(o.space));
  const Eigenvalue ev = find_eigenvalue(pf.spec, space, kDirections.at(o.direction), pf.search);
  r["space"] = o.space;
  r["eigenvalue"] = eigenvalue_json(ev);
  r["warnings"] = string_array(ev.warnings);
  emit(r, o.out);
  return kExitOk;
}

int finish_interval(Json r, const ProblemFile& pf, const SignCharacterization& c, const Options& o) {
  std::vector<std::string> warnings = c.warnings;
  r["indices"] = indices_json(derive_indices(pf.spec));
  r["na"] = true;
  if (c.td_status != TdStatus::UserAsserted) r["td_window_end"] = c.td_window_end;
  r["interval"] = characterization_json(c);
  r["sign_sample"] = sample_sign(pf, c, warnings);
  for (const auto& ev : c.eigenvalues) {
    for (const auto& w : ev.warnings) warnings.push_back(w);
  }
  r["warnings"] = string_array(warnings);
  emit(r, o.out);
  return kExitOk;
}

int cmd_interval(const Options& o) {
  ProblemFile pf = load_problem_file(o.file);
  const SignCharacterization c = constant_sign_interval(pf.spec, characterize_options(pf));
  return finish_interval(header("interval", pf), pf, c, o);
}

int cmd_necessary(const Options& o) {
  ProblemFile pf = load_problem_file(o.file);
  Json r = header("necessary", pf);
  r["nonexistence"] = nonexistence_json(nonexistence_check(pf.spec));
  const auto c = necessary_interval(pf.spec, characterize_options(pf));
  if (!c) {
    r["indices"] = indices_json(derive_indices(pf.spec));
    r["na"] = check_na(pf.spec.sigma, pf.spec.epsilon, pf.spec.n);
    r["interval"] = nullptr;
    r["warnings"] = Json::array({"the opposite sign is impossible for this space"});
    emit(r, o.out);
    return kExitOk;
  }
  return finish_interval(r, pf, *c, o);
}

int cmd_nonhomog(const Options& o) {
  ProblemFile pf = load_problem_file(o.file);
  if (o.subsets.empty()) throw InputError("nonhomog needs --subsets");
  auto [s1, s2] = parse_subsets_json(o.subsets);
  Json r = header("nonhomog", pf);
  r["subsets"] = {{"sigma", index_set_json(s1)}, {"epsilon", index_set_json(s2)}};
  const SignCharacterization c = nonhomogeneous_interval(pf.spec, s1, s2, characterize_options(pf));
  return finish_interval(r, pf, c, o);
}

int cmd_green(const Options& o) {
  ProblemFile pf = load_problem_file(o.file);
  if (o.out.empty()) throw InputError("green needs --out <path.csv>");
  const double M = o.has_M ? o.M : pf.spec.m_bar;
  GreenFunction gf = build_green(pf.spec, M, pf.n_t, pf.n_s, pf.search.steps);
  const SignReport sr = classify_sign(gf, derive_indices(pf.spec));
  {
    std::ofstream csv(o.out, std::ios::binary);
    if (!csv) throw InputError("cannot write '" + o.out + "'");
    write_green_csv(csv, gf);
  }
  Json side = header("green", pf);
  const Json body = green_sidecar_json(gf, sr);
  for (auto it = body.begin(); it != body.end(); ++it) side[it.key()] = it.value();
  emit(side, o.out + ".json");

  Json r;
  r["command"] = "green";
  r["M"] = M;
  r["csv"] = o.out;
  r["sidecar"] = o.out + ".json";
  r["sign"] = sign_class_short(sr.classification);
  std::cout << dump_report(r);
  return kExitOk;
}

int cmd_decompose(const Options& o) {
  ProblemFile pf = load_problem_file(o.file);
  Json r = header("decompose", pf);
  const double M = o.has_M ? o.M : pf.spec.m_bar;
  FundamentalSystem fs = integrate_fundamental(pf.spec, M, pf.search.steps);
  const MarkovDecomposition md = markov_decomposition(fs);
  r["M"] = M;
  r["decomposition"] = decomposition_json(md, kDecomposeSamples);
  r["liouville_deviation"] = liouville_deviation(fs);
  r["warnings"] = Json::array();
  if (!md.full_interval) r["warnings"].push_back("Wronskian positivity fails before b");
  emit(r, o.out);
  return md.full_interval ? kExitOk : kExitProperty;
}

int fail(int code, const char* kind, const std::exception& e) {
  std::cerr << "greensign: " << kind << ": " << e.what() << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Constant-sign intervals of Green's functions of n-th order boundary value problems"};
  app.require_subcommand(1);
  Options o;

  auto add_file = [&](CLI::App* sub) {
    sub->add_option("file", o.file, "Problem JSON file")->required();
    sub->add_option("--out", o.out, "Write the report to this path");
  };
  auto add_M = [&](CLI::App* sub) {
    sub->add_option("--M", o.M, "Value of M (default m_bar)")->each([&](const std::string&) { o.has_M = true; });
  };

  std::vector<std::string> space_names, direction_names;
  for (const auto& [k, v] : kSpaces) space_names.push_back(k);
  for (const auto& [k, v] : kDirections) direction_names.push_back(k);

  auto* check = app.add_subcommand("check", "Property N_a, derived indices and adjoint conditions");
  add_file(check);
  auto* eigen = app.add_subcommand("eigen", "Extreme eigenvalue in a boundary space");
  add_file(eigen);
  eigen->add_option("--space", o.space, "Boundary space")->check(CLI::IsMember(space_names));
  eigen->add_option("--direction", o.direction, "Search direction")->check(CLI::IsMember(direction_names));
  auto* interval = app.add_subcommand("interval", "Constant-sign interval of M");
  add_file(interval);
  auto* necessary = app.add_subcommand("necessary", "Necessary interval for the opposite sign");
  add_file(necessary);
  auto* nonhomog = app.add_subcommand("nonhomog", "Interval with relaxed boundary conditions");
  add_file(nonhomog);
  nonhomog->add_option("--subsets", o.subsets, "[[sigma subset],[epsilon subset]]")->required();
  auto* green = app.add_subcommand("green", "Sample g_M on a grid to CSV with a JSON sidecar");
  add_file(green);
  add_M(green);
  auto* decompose = app.add_subcommand("decompose", "Wronskian positivity window and Markov factors");
  add_file(decompose);
  add_M(decompose);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*check) return cmd_check(o);
    if (*eigen) return cmd_eigen(o);
    if (*interval) return cmd_interval(o);
    if (*necessary) return cmd_necessary(o);
    if (*nonhomog) return cmd_nonhomog(o);
    if (*green) return cmd_green(o);
    if (*decompose) return cmd_decompose(o);
  } catch (const InputError& e) {
    return fail(kExitInput, "input error", e);
  } catch (const ParseError& e) {
    return fail(kExitInput, "input error", e);
  } catch (const NotFoundError& e) {
    return fail(kExitNumeric, "not found", e);
  } catch (const SingularError& e) {
    return fail(kExitNumeric, "singular", e);
  } catch (const OverflowError& e) {
    return fail(kExitNumeric, "overflow", e);
  } catch (const DisconjugacyError& e) {
    return fail(kExitProperty, "disconjugacy", e);
  } catch (const ValidationError& e) {
    return fail(kExitProperty, "property failure", e);
  } catch (const Error& e) {
    return fail(kExitNumeric, "error", e);
  }
  return kExitInput;
}
