#ifndef SHIFTLAB_SHIFTLAB_HPP
#define SHIFTLAB_SHIFTLAB_HPP

// Umbrella header: the whole library in dependency order.

#include "version.hpp"
#include "errors.hpp"
#include "precision.hpp"
#include "complex.hpp"
#include "rational.hpp"
#include "space_spec.hpp"
#include "weights.hpp"
#include "recurrence.hpp"
#include "operators.hpp"
#include "quadrature.hpp"
#include "spaces.hpp"
#include "io.hpp"
#include "scenario.hpp"

#endif
