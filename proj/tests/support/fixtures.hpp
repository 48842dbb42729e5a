#pragma once

#include <string>

#include "rrf/core_model.hpp"
#include "rrf/io/csv.hpp"
#include "rrf/io/problem_io.hpp"

namespace rrf_test {

inline std::string fixture_path(const std::string& name) { return std::string(RRF_FIXTURE_DIR) + "/" + name; }

inline rrf::NominalProblem load_fixture(const std::string& name) {
  return rrf::io::parse_problem(rrf::io::read_file(fixture_path(name)));
}

}  // namespace rrf_test
