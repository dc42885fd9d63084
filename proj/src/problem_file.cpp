#include "greensign/problem_file.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

namespace greensign {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key())) throw InputError("unknown key '" + it.key() + "' in " + where);
  }
}

double number(const json& v, const std::string& name) {
  if (!v.is_number()) throw InputError(name + " must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw InputError(name + " must be finite");
  return d;
}

int integer(const json& v, const std::string& name) {
  if (!v.is_number_integer()) throw InputError(name + " must be an integer");
  return v.get<int>();
}

std::vector<int> int_array(const json& v, const std::string& name) {
  if (!v.is_array()) throw InputError(name + " must be an array of integers");
  std::vector<int> out;
  for (const auto& e : v) out.push_back(integer(e, name + " entry"));
  return out;
}

const json& required(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw InputError(std::string("missing required key '") + key + "'");
  return *it;
}

}  // namespace

ProblemFile parse_problem_json(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) throw InputError("problem file must be a JSON object");
  reject_unknown(root,
                 {"order", "interval", "coefficients", "m_bar", "sigma", "epsilon", "search", "grid",
                  "td_hypothesis"},
                 "problem file");

  ProblemFile pf;
  const int n = integer(required(root, "order"), "order");
  if (n < 2) throw InputError("order must be at least 2");

  const json& interval = required(root, "interval");
  if (!interval.is_array() || interval.size() != 2) throw InputError("interval must be [a, b]");
  const double a = number(interval[0], "interval[0]");
  const double b = number(interval[1], "interval[1]");

  const json& coeffs = required(root, "coefficients");
  if (!coeffs.is_array()) throw InputError("coefficients must be an array of strings");
  if (static_cast<int>(coeffs.size()) != n) {
    throw InputError("coefficients must list exactly " + std::to_string(n) + " expressions");
  }
  std::vector<CoefficientExpr> p;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    if (!coeffs[j].is_string()) throw InputError("coefficient p" + std::to_string(j + 1) + " must be a string");
    const std::string src = coeffs[j].get<std::string>();
    try {
      p.push_back(parse_expr(src));
    } catch (const ParseError& e) {
      throw InputError("coefficient p" + std::to_string(j + 1) + ": " + e.what());
    }
    pf.coefficient_text.push_back(src);
  }

  double m_bar = 0.0;
  if (root.contains("m_bar")) m_bar = number(root["m_bar"], "m_bar");
  const std::vector<int> sigma = int_array(required(root, "sigma"), "sigma");
  const std::vector<int> epsilon = int_array(required(root, "epsilon"), "epsilon");

  try {
    pf.spec = make_problem(n, a, b, std::move(p), m_bar, sigma, epsilon);
  } catch (const ValidationError& e) {
    throw InputError(e.what());
  }

  if (root.contains("search")) {
    const json& s = root["search"];
    if (!s.is_object()) throw InputError("search must be an object");
    reject_unknown(s, {"lambda_max", "grid_points", "refine_tol"}, "search");
    if (s.contains("lambda_max")) pf.search.lambda_max = number(s["lambda_max"], "search.lambda_max");
    if (s.contains("grid_points")) pf.search.grid_points = integer(s["grid_points"], "search.grid_points");
    if (s.contains("refine_tol")) pf.search.refine_tol = number(s["refine_tol"], "search.refine_tol");
    if (s.contains("lambda_max") && !(pf.search.lambda_max > 0.0)) {
      throw InputError("search.lambda_max must be positive");
    }
  }
  try {
    pf.search = pf.search.resolved(pf.spec);
  } catch (const ValidationError& e) {
    throw InputError(std::string("search: ") + e.what());
  }

  if (root.contains("grid")) {
    const json& g = root["grid"];
    if (!g.is_object()) throw InputError("grid must be an object");
    reject_unknown(g, {"n_t", "n_s"}, "grid");
    if (g.contains("n_t")) pf.n_t = integer(g["n_t"], "grid.n_t");
    if (g.contains("n_s")) pf.n_s = integer(g["n_s"], "grid.n_s");
    if (pf.n_t < 3 || pf.n_s < 3) throw InputError("grid sizes must be at least 3");
  }

  if (root.contains("td_hypothesis")) {
    const json& td = root["td_hypothesis"];
    if (!td.is_string()) throw InputError("td_hypothesis must be \"assert\" or \"check\"");
    const std::string v = td.get<std::string>();
    if (v == "assert") {
      pf.td = TdMode::Assert;
    } else if (v == "check") {
      pf.td = TdMode::Check;
    } else {
      throw InputError("td_hypothesis must be \"assert\" or \"check\"");
    }
  }
  return pf;
}

ProblemFile load_problem_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open problem file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem_json(buf.str());
}

std::pair<std::vector<int>, std::vector<int>> parse_subsets_json(const std::string& text) {
  json v;
  try {
    v = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("invalid --subsets JSON: ") + e.what());
  }
  if (v.is_array() && v.size() == 2) {
    return {int_array(v[0], "sigma subset"), int_array(v[1], "epsilon subset")};
  }
  if (v.is_object()) {
    reject_unknown(v, {"sigma", "epsilon"}, "--subsets");
    return {int_array(required(v, "sigma"), "sigma subset"),
            int_array(required(v, "epsilon"), "epsilon subset")};
  }
  throw InputError("--subsets must be [[sigma...],[epsilon...]] or {\"sigma\":[...],\"epsilon\":[...]}");
}

}  // namespace greensign
