#pragma once

#include "catforge/common.hpp"
#include "catforge/parallel.hpp"
#include "catforge/fock.hpp"
#include "catforge/coherent.hpp"
#include "catforge/three_mode.hpp"
#include "catforge/gp.hpp"
#include "catforge/dispersive.hpp"
#include "catforge/phasespace.hpp"
#include "catforge/metrology.hpp"
#include "catforge/optimize.hpp"
