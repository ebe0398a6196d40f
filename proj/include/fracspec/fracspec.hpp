#pragma once

#include "fracspec/bench.hpp"
#include "fracspec/csv.hpp"
#include "fracspec/error.hpp"
#include "fracspec/fracops.hpp"
#include "fracspec/inputs.hpp"
#include "fracspec/parallel.hpp"
#include "fracspec/quadrature.hpp"
#include "fracspec/rhs.hpp"
#include "fracspec/solver.hpp"
#include "fracspec/spectral.hpp"
#include "fracspec/timegrid.hpp"
#include "fracspec/verify.hpp"
