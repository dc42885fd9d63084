#include "greensign/report.hpp"

#include <cmath>
#include <cstdio>

namespace greensign {

namespace {

std::string format_double(double v) {
  if (std::isnan(v)) return "\"nan\"";
  if (std::isinf(v)) return v > 0 ? "\"infinity\"" : "\"-infinity\"";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s = buf;
  // Keep the value typed as a float on re-read.
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

void indent(std::string& out, int level) { out.append(static_cast<std::size_t>(level) * 2, ' '); }

void write(const Json& j, std::string& out, int level) {
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      std::size_t i = 0;
      for (auto it = j.begin(); it != j.end(); ++it, ++i) {
        indent(out, level + 1);
        out += Json(it.key()).dump();
        out += ": ";
        write(it.value(), out, level + 1);
        out += i + 1 < j.size() ? ",\n" : "\n";
      }
      indent(out, level);
      out += "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      bool flat = true;
      for (const auto& e : j) flat = flat && !e.is_structured();
      if (flat) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          write(j[i], out, level);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        indent(out, level + 1);
        write(j[i], out, level + 1);
        out += i + 1 < j.size() ? ",\n" : "\n";
      }
      indent(out, level);
      out += "]";
      return;
    }
    case Json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

std::string direction_key(Direction d) { return direction_name(d); }

}  // namespace

std::string dump_report(const Json& j) {
  std::string out;
  write(j, out, 0);
  out += "\n";
  return out;
}

Json number_json(double v) { return Json(v); }

Json index_set_json(const IndexSet& s) {
  Json a = Json::array();
  for (int v : s) a.push_back(v);
  return a;
}

Json inputs_json(const ProblemFile& pf) {
  const ProblemSpec& s = pf.spec;
  Json j;
  j["order"] = s.n;
  j["interval"] = Json::array({s.a, s.b});
  Json coeffs = Json::array();
  for (const auto& c : pf.coefficient_text) coeffs.push_back(c);
  j["coefficients"] = coeffs;
  j["m_bar"] = s.m_bar;
  j["sigma"] = index_set_json(s.sigma);
  j["epsilon"] = index_set_json(s.epsilon);
  j["search"] = {{"lambda_max", pf.search.lambda_max},
                 {"grid_points", pf.search.grid_points},
                 {"refine_tol", pf.search.refine_tol},
                 {"steps", pf.search.steps}};
  j["grid"] = {{"n_t", pf.n_t}, {"n_s", pf.n_s}};
  j["td_hypothesis"] = pf.td == TdMode::Assert ? "assert" : "check";
  return j;
}

Json indices_json(const DerivedIndices& d) {
  Json j;
  j["alpha"] = d.alpha;
  j["beta"] = d.beta;
  j["eta"] = d.eta;
  j["gamma"] = d.gamma;
  j["tau"] = index_set_json(d.tau);
  j["delta"] = index_set_json(d.delta);
  j["alpha2"] = d.alpha2;
  j["beta2"] = d.beta2;
  j["mu"] = d.mu;
  return j;
}

Json functional_json(const BoundaryFunctional& f) {
  Json j;
  j["endpoint"] = f.endpoint == BoundaryFunctional::Endpoint::A ? "a" : "b";
  j["order"] = f.leading();
  Json c = Json::array();
  for (double v : f.coefficients) c.push_back(v);
  j["coefficients"] = c;
  return j;
}

Json eigenvalue_json(const Eigenvalue& ev) {
  Json j;
  j["space"] = ev.label;
  j["direction"] = direction_key(ev.direction);
  j["lambda"] = ev.lambda;
  j["root"] = std::pow(std::fabs(ev.lambda), 1.0 / (ev.space.sigma.size() + ev.space.epsilon.size()));
  j["bracket"] = Json::array({ev.bracket_lo, ev.bracket_hi});
  j["residual"] = ev.residual;
  j["simple"] = ev.simple;
  return j;
}

Json endpoint_json(const IntervalEndpoint& e) {
  Json j;
  j["value"] = e.value;
  j["closed"] = e.closed;
  j["source"] = e.source;
  if (!e.infinite) {
    j["space"] = e.space;
    j["eigenvalue"] = e.eigenvalue;
  }
  return j;
}

Json characterization_json(const SignCharacterization& c) {
  Json j;
  j["classification"] = sign_class_short(c.classification);
  j["necessary_only"] = c.necessary_only;
  j["lower"] = endpoint_json(c.lower);
  j["upper"] = endpoint_json(c.upper);
  std::string text = c.lower.closed ? "[" : "(";
  text += c.lower.infinite ? "-infinity" : format_double(c.lower.value);
  text += ", " + format_double(c.upper.value);
  text += c.upper.closed ? "]" : ")";
  j["text"] = text;
  j["td_status"] = td_status_name(c.td_status);
  Json evs = Json::array();
  for (const auto& ev : c.eigenvalues) evs.push_back(eigenvalue_json(ev));
  j["eigenvalues"] = evs;
  return j;
}

Json sign_report_json(const SignReport& r) {
  Json j;
  j["classification"] = sign_class_short(r.classification);
  j["interior_sign_ok"] = r.interior_sign_ok;
  j["d_alpha_ok"] = r.d_alpha_ok;
  j["d_beta_ok"] = r.d_beta_ok;
  j["worst_violation"] = {{"t", r.worst_violation.t},
                          {"s", r.worst_violation.s},
                          {"value", r.worst_violation.value}};
  return j;
}

Json nonexistence_json(const NonexistenceFlags& f) {
  Json j;
  j["no_inverse_negative"] = f.no_inverse_negative;
  j["no_inverse_positive"] = f.no_inverse_positive;
  j["trigger"] = f.trigger;
  return j;
}

Json decomposition_json(const MarkovDecomposition& md, int samples) {
  Json j;
  j["window"] = Json::array({md.t.front(), md.window_end});
  j["full_interval"] = md.full_interval;
  if (md.failure) {
    j["failure"] = {{"node", md.failure->node},
                    {"t", md.failure->t},
                    {"k", md.failure->k},
                    {"value", md.failure->value}};
  }
  const std::size_t count = md.t.size();
  const std::size_t stride = std::max<std::size_t>(1, (count - 1) / std::max(1, samples - 1));
  Json t = Json::array();
  Json v = Json::array();
  for (std::size_t k = 0; k < md.v.size(); ++k) v.push_back(Json::array());
  for (std::size_t i = 0; i < count; i += stride) {
    t.push_back(md.t[i]);
    for (std::size_t k = 0; k < md.v.size(); ++k) v[k].push_back(md.v[k][i]);
  }
  j["t"] = t;
  j["v"] = v;
  return j;
}

void write_green_csv(std::ostream& out, const GreenFunction& gf) {
  out << "t,s,g\n";
  for (std::size_t i = 0; i < gf.t_grid.size(); ++i) {
    for (std::size_t j = 0; j < gf.s_grid.size(); ++j) {
      out << format_double(gf.t_grid[i]) << ',' << format_double(gf.s_grid[j]) << ','
          << format_double(gf.values(static_cast<int>(i), static_cast<int>(j))) << '\n';
    }
  }
}

Json green_sidecar_json(const GreenFunction& gf, const SignReport& r) {
  auto arr = [](const std::vector<double>& v) {
    Json a = Json::array();
    for (double x : v) a.push_back(x);
    return a;
  };
  Json j;
  j["M"] = gf.M;
  j["sign"] = sign_class_short(r.classification);
  j["sign_report"] = sign_report_json(r);
  j["max_abs_g"] = gf.max_abs();
  j["alpha"] = gf.alpha;
  j["beta"] = gf.beta;
  j["s_grid"] = arr(gf.s_grid);
  j["d_alpha_at_a"] = arr(gf.d_alpha_at_a);
  j["d_beta_at_b"] = arr(gf.d_beta_at_b);
  j["t_grid"] = arr(gf.t_grid);
  j["d_eta_at_sa"] = arr(gf.d_eta_at_sa);
  j["d_gamma_at_sb"] = arr(gf.d_gamma_at_sb);
  j["diagnostics"] = {{"max_bc_residual", gf.max_bc_residual},
                      {"max_jump_residual", gf.max_jump_residual},
                      {"max_solve_residual", gf.max_solve_residual}};
  Json w = Json::array();
  for (const auto& s : gf.warnings) w.push_back(s);
  j["warnings"] = w;
  return j;
}

}  // namespace greensign
