#pragma once
/// Umbrella header.

#include "pilotdecon/angular.hpp"
#include "pilotdecon/assignment.hpp"
#include "pilotdecon/channel.hpp"
#include "pilotdecon/estimator.hpp"
#include "pilotdecon/geometry.hpp"
#include "pilotdecon/quadrature.hpp"
#include "pilotdecon/rng.hpp"
#include "pilotdecon/simharness.hpp"
