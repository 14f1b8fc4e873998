#pragma once

#include "fcsim/airframe.hpp"
#include "fcsim/allocation.hpp"
#include "fcsim/attitude.hpp"
#include "fcsim/config.hpp"
#include "fcsim/core.hpp"
#include "fcsim/defaults.hpp"
#include "fcsim/guidance.hpp"
#include "fcsim/metrics.hpp"
#include "fcsim/mission.hpp"
#include "fcsim/plots.hpp"
#include "fcsim/position.hpp"
#include "fcsim/rcac.hpp"
#include "fcsim/rcac_bank.hpp"
#include "fcsim/scenario.hpp"
#include "fcsim/tecs.hpp"
#include "fcsim/telemetry.hpp"
