#pragma once

// Umbrella header for the shipment-planning toolkit.

#include "shipplan/cost.hpp"
#include "shipplan/dijkstra.hpp"
#include "shipplan/generator.hpp"
#include "shipplan/heuristic.hpp"
#include "shipplan/index.hpp"
#include "shipplan/json_io.hpp"
#include "shipplan/knapsack.hpp"
#include "shipplan/milp.hpp"
#include "shipplan/mps_io.hpp"
#include "shipplan/oracle.hpp"
#include "shipplan/report.hpp"
#include "shipplan/rng.hpp"
#include "shipplan/types.hpp"
#include "shipplan/validate.hpp"
#include "shipplan/version.hpp"
