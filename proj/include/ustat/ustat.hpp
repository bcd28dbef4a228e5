#pragma once

// Umbrella header: uniformly bounded orthonormal bases, sparse coefficient
// tensors, U/V-statistics in naive and orthogonal-series form, mixing
// process simulators with exact coefficients, exponential tail bounds with
// tracked constants, and a reproducible Monte Carlo verification harness.

#include "ustat/accumulator.hpp"
#include "ustat/basis.hpp"
#include "ustat/bounds.hpp"
#include "ustat/experiment.hpp"
#include "ustat/kernel.hpp"
#include "ustat/measure.hpp"
#include "ustat/montecarlo.hpp"
#include "ustat/process.hpp"
#include "ustat/quadrature.hpp"
#include "ustat/rng.hpp"
#include "ustat/sample.hpp"
#include "ustat/serialization.hpp"
#include "ustat/statistics.hpp"
#include "ustat/tensor.hpp"
#include "ustat/version.hpp"
