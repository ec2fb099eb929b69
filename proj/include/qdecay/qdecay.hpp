#pragma once

#include "qdecay/complex_math.hpp"
#include "qdecay/grid.hpp"
#include "qdecay/model.hpp"
#include "qdecay/quadrature.hpp"
#include "qdecay/propagator.hpp"
#include "qdecay/survival.hpp"
#include "qdecay/fitting.hpp"
#include "qdecay/cn_solver.hpp"
#include "qdecay/version.hpp"
