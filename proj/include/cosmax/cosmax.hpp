#pragma once

// Umbrella header for the cos-max collinearity diagnostics library.

#include "cosmax/errors.hpp"
#include "cosmax/matrix.hpp"
#include "cosmax/rng.hpp"
#include "cosmax/data.hpp"
#include "cosmax/diagnostics.hpp"
#include "cosmax/regression.hpp"
#include "cosmax/report.hpp"
#include "cosmax/render.hpp"
