#pragma once

#include "avoidapprox/avoid_countable.hpp"
#include "avoidapprox/avoid_one.hpp"
#include "avoidapprox/compact_set.hpp"
#include "avoidapprox/core.hpp"
#include "avoidapprox/countable_sets.hpp"
#include "avoidapprox/evaluator.hpp"
#include "avoidapprox/linalg.hpp"
#include "avoidapprox/mergelyan.hpp"
#include "avoidapprox/pipeline.hpp"
#include "avoidapprox/poly.hpp"
#include "avoidapprox/proposition.hpp"
