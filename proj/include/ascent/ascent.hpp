// ascent.hpp -- umbrella header
#pragma once

#include "ascent/bipartite.hpp"
#include "ascent/centrality.hpp"
#include "ascent/common.hpp"
#include "ascent/community.hpp"
#include "ascent/csv.hpp"
#include "ascent/graphdist.hpp"
#include "ascent/io.hpp"
#include "ascent/matrix.hpp"
#include "ascent/multiplex.hpp"
#include "ascent/partners.hpp"
#include "ascent/pipeline.hpp"
#include "ascent/records.hpp"
#include "ascent/stats.hpp"
#include "ascent/synth.hpp"
