#pragma once

#include "skewtorus/app.hpp"
#include "skewtorus/classical.hpp"
#include "skewtorus/diophantine.hpp"
#include "skewtorus/errors.hpp"
#include "skewtorus/propagator.hpp"
#include "skewtorus/rational.hpp"
#include "skewtorus/spectrum.hpp"
#include "skewtorus/statistics.hpp"
