#pragma once

#include "hyperlab/bounds.hpp"
#include "hyperlab/errors.hpp"
#include "hyperlab/game.hpp"
#include "hyperlab/gconvex.hpp"
#include "hyperlab/geometry.hpp"
#include "hyperlab/optim.hpp"
#include "hyperlab/oracle.hpp"
#include "hyperlab/parallel.hpp"
#include "hyperlab/real.hpp"
#include "hyperlab/reduction.hpp"
#include "hyperlab/stats.hpp"
