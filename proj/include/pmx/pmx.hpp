#pragma once

#include "pmx/field.hpp"
#include "pmx/groebner.hpp"
#include "pmx/ideal.hpp"
#include "pmx/matrix.hpp"
#include "pmx/minors.hpp"
#include "pmx/monomial.hpp"
#include "pmx/parse.hpp"
#include "pmx/polynomial.hpp"
#include "pmx/strata.hpp"
#include "pmx/toric.hpp"
#include "pmx/verify.hpp"
