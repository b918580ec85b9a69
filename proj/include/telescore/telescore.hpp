#pragma once

// Umbrella header: teleportation scoring by average fidelity F, fidelity
// deviation D, and the teleportability score tau_k = F - k*D, for Schmidt-form
// resources under local and global noise and in n-chain configurations.

#include "telescore/qmath.hpp"
#include "telescore/states.hpp"
#include "telescore/channels.hpp"
#include "telescore/teleport.hpp"
#include "telescore/metrics.hpp"
#include "telescore/model_spec.hpp"
#include "telescore/sweep.hpp"
