#pragma once

#include "sinsim/constants.hpp"
#include "sinsim/experiment.hpp"
#include "sinsim/motion.hpp"
#include "sinsim/orbit.hpp"
#include "sinsim/report_io.hpp"
#include "sinsim/routing.hpp"
#include "sinsim/scenario.hpp"
#include "sinsim/scenario_config.hpp"
#include "sinsim/sdn.hpp"
#include "sinsim/topology.hpp"
#include "sinsim/vec3.hpp"
#include "sinsim/visibility.hpp"
