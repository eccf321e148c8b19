#pragma once

#include "gapred/claims.hpp"
#include "gapred/clique_reduction.hpp"
#include "gapred/error.hpp"
#include "gapred/gap.hpp"
#include "gapred/graph.hpp"
#include "gapred/limits.hpp"
#include "gapred/minrep.hpp"
#include "gapred/mmis_reduction.hpp"
#include "gapred/rng.hpp"
#include "gapred/sat.hpp"
#include "gapred/setcover.hpp"
