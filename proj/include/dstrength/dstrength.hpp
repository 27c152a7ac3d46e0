#pragma once

#include "dstrength/core.hpp"
#include "dstrength/discrimination.hpp"
#include "dstrength/errors.hpp"
#include "dstrength/experiments.hpp"
#include "dstrength/io.hpp"
#include "dstrength/measures.hpp"
#include "dstrength/optimize.hpp"
#include "dstrength/parallel.hpp"
#include "dstrength/random.hpp"
#include "dstrength/states.hpp"
