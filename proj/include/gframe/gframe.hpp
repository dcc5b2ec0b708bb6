#pragma once

#include "gframe/cli.hpp"
#include "gframe/erasure.hpp"
#include "gframe/error.hpp"
#include "gframe/frame.hpp"
#include "gframe/graph.hpp"
#include "gframe/linalg.hpp"
#include "gframe/matrix.hpp"
#include "gframe/optimality.hpp"
#include "gframe/report.hpp"
