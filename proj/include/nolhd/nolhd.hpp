#pragma once

// Umbrella header: design construction, correlation criteria, lasso solver
// and the design-comparison simulation harness.

#include "nolhd/construct.hpp"
#include "nolhd/criteria.hpp"
#include "nolhd/design.hpp"
#include "nolhd/fixtures.hpp"
#include "nolhd/io.hpp"
#include "nolhd/lasso.hpp"
#include "nolhd/matrix.hpp"
#include "nolhd/rng.hpp"
#include "nolhd/simulate.hpp"
#include "nolhd/version.hpp"
