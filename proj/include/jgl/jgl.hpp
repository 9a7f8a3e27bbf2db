#pragma once

// Umbrella header: the whole library except the CLI layer.

#include "jgl/bounds.hpp"
#include "jgl/csv.hpp"
#include "jgl/errors.hpp"
#include "jgl/functions.hpp"
#include "jgl/gap.hpp"
#include "jgl/interval.hpp"
#include "jgl/matrix.hpp"
#include "jgl/partition.hpp"
#include "jgl/quadrature.hpp"
#include "jgl/random.hpp"
#include "jgl/suites.hpp"
#include "jgl/svg.hpp"
