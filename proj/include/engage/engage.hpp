/// engage/engage.hpp
///
/// Umbrella header.

#ifndef ENGAGE_ENGAGE_HPP_
#define ENGAGE_ENGAGE_HPP_

#include "engage/commands.hpp"
#include "engage/curvefit.hpp"
#include "engage/error.hpp"
#include "engage/metrics.hpp"
#include "engage/model.hpp"
#include "engage/stats.hpp"
#include "engage/synth.hpp"
#include "engage/topicgraph.hpp"

#endif
