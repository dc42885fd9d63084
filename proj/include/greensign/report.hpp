#pragma once

// Deterministic JSON reports: insertion-ordered keys, floats printed with 17
// significant digits, infinities written as the strings "infinity" and
// "-infinity".

#include <json.hpp>
#include <ostream>
#include <string>

#include "greensign/characterize.hpp"
#include "greensign/greenfn.hpp"
#include "greensign/odecore.hpp"
#include "greensign/problem_file.hpp"

namespace greensign {

using Json = nlohmann::ordered_json;

/// Serializes with two-space indentation and a trailing newline.
std::string dump_report(const Json& j);

Json number_json(double v);
Json index_set_json(const IndexSet& s);
Json inputs_json(const ProblemFile& pf);
Json indices_json(const DerivedIndices& d);
Json functional_json(const BoundaryFunctional& f);
Json eigenvalue_json(const Eigenvalue& ev);
Json endpoint_json(const IntervalEndpoint& e);
Json characterization_json(const SignCharacterization& c);
Json sign_report_json(const SignReport& r);
Json nonexistence_json(const NonexistenceFlags& f);
Json decomposition_json(const MarkovDecomposition& md, int samples);

/// "t,s,g" rows with LF endings and C-locale decimals.
void write_green_csv(std::ostream& out, const GreenFunction& gf);

/// Boundary slices and diagnostics of a Green's function.
Json green_sidecar_json(const GreenFunction& gf, const SignReport& r);

}  // namespace greensign
