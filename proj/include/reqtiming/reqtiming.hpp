#pragma once

#include "analysis.hpp"
#include "error.hpp"
#include "event_log.hpp"
#include "ingest.hpp"
#include "poisson.hpp"
#include "random.hpp"
#include "record.hpp"
#include "report.hpp"
#include "sim_config.hpp"
#include "simulator.hpp"
#include "stats.hpp"
#include "svg.hpp"
