#pragma once

#include "relcc/capacity.hpp"
#include "relcc/coefficient.hpp"
#include "relcc/core.hpp"
#include "relcc/graph.hpp"
#include "relcc/harness.hpp"
#include "relcc/io.hpp"
#include "relcc/metrics.hpp"
#include "relcc/model.hpp"
