#pragma once

// Pseudo-spectral laboratory for the two-dimensional Kuramoto-Sivashinsky
// system on a torus: exact semigroup and Duhamel operators, an
// integrating-factor RK4 reference integrator, mild-solution fixed-point
// iteration, the complexified shift hierarchy, exponentially weighted norms,
// analyticity-radius estimation, smallness thresholds, and a scenario
// harness.

#include "ks2d/complex_shift.hpp"
#include "ks2d/duhamel.hpp"
#include "ks2d/fft.hpp"
#include "ks2d/field.hpp"
#include "ks2d/initial_data.hpp"
#include "ks2d/io.hpp"
#include "ks2d/nonlinearity.hpp"
#include "ks2d/norms.hpp"
#include "ks2d/picard.hpp"
#include "ks2d/radius.hpp"
#include "ks2d/scenario.hpp"
#include "ks2d/semigroup.hpp"
#include "ks2d/stepper.hpp"
#include "ks2d/symbol.hpp"
#include "ks2d/thresholds.hpp"
#include "ks2d/torus.hpp"
#include "ks2d/trajectory.hpp"
#include "ks2d/version.hpp"
