#pragma once

// Umbrella header: expansion properties of quiver representations.

#include "quivex/coxeter.hpp"
#include "quivex/error.hpp"
#include "quivex/forms.hpp"
#include "quivex/ivec.hpp"
#include "quivex/kronecker.hpp"
#include "quivex/quiver.hpp"
#include "quivex/rational.hpp"
#include "quivex/report.hpp"
#include "quivex/rng.hpp"
#include "quivex/spectral.hpp"
#include "quivex/stability.hpp"
#include "quivex/subrep.hpp"
#include "quivex/witness.hpp"
