#pragma once

#include "ihalton/diagnose.hpp"
#include "ihalton/integrate.hpp"
#include "ihalton/interlace.hpp"
#include "ihalton/normal.hpp"
#include "ihalton/numbase.hpp"
#include "ihalton/points.hpp"
#include "ihalton/scramble.hpp"
#include "ihalton/sequence.hpp"
#include "ihalton/sobol.hpp"
