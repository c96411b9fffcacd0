#pragma once

#include "cav/arith.hpp"
#include "cav/badprimes.hpp"
#include "cav/fields.hpp"
#include "cav/filters.hpp"
#include "cav/groebner.hpp"
#include "cav/ideals.hpp"
#include "cav/monomial.hpp"
#include "cav/pipeline.hpp"
#include "cav/poly.hpp"
#include "cav/polycheck.hpp"
#include "cav/resultant.hpp"
#include "cav/scenario.hpp"
