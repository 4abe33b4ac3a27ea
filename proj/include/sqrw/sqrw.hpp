#pragma once

#include "analytics.hpp"
#include "csv.hpp"
#include "experiment_config.hpp"
#include "experiments.hpp"
#include "fit.hpp"
#include "noise.hpp"
#include "parallel.hpp"
#include "pathsum.hpp"
#include "rng.hpp"
#include "state.hpp"
#include "walk.hpp"
