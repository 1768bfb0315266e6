#pragma once

// Umbrella header.

#include "qwave/errors.hpp"
#include "qwave/fourier.hpp"
#include "qwave/grid.hpp"
#include "qwave/hydro.hpp"
#include "qwave/info.hpp"
#include "qwave/numerics.hpp"
#include "qwave/potential.hpp"
#include "qwave/propagate.hpp"
#include "qwave/scenario.hpp"
#include "qwave/states.hpp"
#include "qwave/thermo.hpp"
#include "qwave/wavefunction.hpp"
