#pragma once

// Umbrella header: outage models and eavesdropper-tolerance solver for a
// two-hop relay network with threshold-triggered cooperative jamming.

#include "jamtol/version.hpp"
#include "jamtol/prob.hpp"
#include "jamtol/specialfn.hpp"
#include "jamtol/quadrature.hpp"
#include "jamtol/channel.hpp"
#include "jamtol/rng.hpp"
#include "jamtol/montecarlo.hpp"
#include "jamtol/analytic.hpp"
#include "jamtol/capability.hpp"
