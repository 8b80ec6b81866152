#pragma once

// Umbrella header: taxicab singular value decomposition of contingency
// tables under two centerings, with sign-quality diagnostics, reports,
// and symmetric maps.

#include "taxicab/analyze.hpp"
#include "taxicab/centering.hpp"
#include "taxicab/csv.hpp"
#include "taxicab/error.hpp"
#include "taxicab/model.hpp"
#include "taxicab/qsr.hpp"
#include "taxicab/report.hpp"
#include "taxicab/scores.hpp"
#include "taxicab/svg.hpp"
#include "taxicab/tsvd.hpp"
#include "taxicab/version.hpp"
