#pragma once

#include "rrf/base_geometry.hpp"
#include "rrf/core_model.hpp"
#include "rrf/distance_solver.hpp"
#include "rrf/eigh.hpp"
#include "rrf/error.hpp"
#include "rrf/io/csv.hpp"
#include "rrf/io/problem_io.hpp"
#include "rrf/io/report_io.hpp"
#include "rrf/io/sdpa.hpp"
#include "rrf/oracle.hpp"
#include "rrf/rrf_bounds.hpp"
#include "rrf/svm.hpp"
