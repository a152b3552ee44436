#pragma once

#include "drspace/linalg.hpp"
#include "drspace/rational.hpp"
#include "drspace/mpoly.hpp"
#include "drspace/roots.hpp"
#include "drspace/random.hpp"
#include "drspace/parallel.hpp"
#include "drspace/clifford.hpp"
#include "drspace/dralgebra.hpp"
#include "drspace/curvature.hpp"
#include "drspace/spectrum.hpp"
#include "drspace/hypersurface.hpp"
#include "drspace/obstruction.hpp"
#include "drspace/report.hpp"
#include "drspace/driver.hpp"
