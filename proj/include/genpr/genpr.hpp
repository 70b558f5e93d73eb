#ifndef GENPR_GENPR_HPP
#define GENPR_GENPR_HPP

#include "caps.hpp"
#include "errors.hpp"
#include "grid.hpp"
#include "io.hpp"
#include "knn_geometry.hpp"
#include "metrics.hpp"
#include "parallel.hpp"
#include "plot.hpp"
#include "point_cloud.hpp"
#include "rng.hpp"
#include "samplers.hpp"
#include "special.hpp"
#include "sweep.hpp"
#include "transforms.hpp"

#endif
