#pragma once

#include "sgp4x/batch.hpp"
#include "sgp4x/bench.hpp"
#include "sgp4x/dual.hpp"
#include "sgp4x/epoch.hpp"
#include "sgp4x/gravity.hpp"
#include "sgp4x/jacobian.hpp"
#include "sgp4x/precision.hpp"
#include "sgp4x/scalar.hpp"
#include "sgp4x/sgp4.hpp"
#include "sgp4x/tle.hpp"
