#pragma once

// Problem JSON files:
//
//   {
//     "order": 4,
//     "interval": [0.0, 1.0],
//     "coefficients": ["0", "0", "0", "0"],        // p_1 .. p_n
//     "m_bar": 0.0,                                 // optional, default 0
//     "sigma": [0, 2],
//     "epsilon": [1, 2],
//     "search": {"lambda_max": 1e6, "grid_points": 4000, "refine_tol": 1e-12},  // optional
//     "grid": {"n_t": 201, "n_s": 201},             // optional
//     "td_hypothesis": "check"                      // or "assert"; optional
//   }
//
// Unknown keys are rejected at every level.

#include <string>
#include <vector>

#include "greensign/characterize.hpp"
#include "greensign/error.hpp"
#include "greensign/problem.hpp"

namespace greensign {

/// Malformed or schema-violating input file.
class InputError : public Error {
 public:
  using Error::Error;
};

struct ProblemFile {
  ProblemSpec spec;
  std::vector<std::string> coefficient_text;
  SearchConfig search;  // lambda_max resolved
  int n_t = kDefaultGrid;
  int n_s = kDefaultGrid;
  TdMode td = TdMode::Check;
};

ProblemFile parse_problem_json(const std::string& text);
ProblemFile load_problem_file(const std::string& path);

/// Parses "[[0,2],[1,3]]" or {"sigma":[..],"epsilon":[..]} into two index lists.
std::pair<std::vector<int>, std::vector<int>> parse_subsets_json(const std::string& text);

}  // namespace greensign
