#pragma once

// Umbrella header: two-mode graphs, one-mode projection with edge
// provenance, maximal-clique communities, influence scoring, node-removal
// ablation, and file I/O.

#include "bipinf/ablation.hpp"
#include "bipinf/bipartite_graph.hpp"
#include "bipinf/communities.hpp"
#include "bipinf/errors.hpp"
#include "bipinf/io.hpp"
#include "bipinf/projection.hpp"
#include "bipinf/scoring.hpp"
