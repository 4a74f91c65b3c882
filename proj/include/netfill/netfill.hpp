#pragma once

#include "netfill/baselines.hpp"
#include "netfill/completer.hpp"
#include "netfill/generators.hpp"
#include "netfill/gin.hpp"
#include "netfill/graph.hpp"
#include "netfill/harness.hpp"
#include "netfill/io.hpp"
#include "netfill/matcher.hpp"
#include "netfill/matrix.hpp"
#include "netfill/metrics.hpp"
#include "netfill/rng.hpp"
#include "netfill/tape.hpp"
