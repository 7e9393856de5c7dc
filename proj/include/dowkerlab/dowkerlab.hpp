#ifndef DOWKERLAB_DOWKERLAB_HPP
#define DOWKERLAB_DOWKERLAB_HPP

#include "params.hpp"
#include "special.hpp"
#include "model.hpp"
#include "rng.hpp"
#include "sampler.hpp"
#include "bipartite.hpp"
#include "dowker.hpp"
#include "homology.hpp"
#include "palm.hpp"
#include "stats.hpp"
#include "calibrate.hpp"
#include "ingest.hpp"

#endif
