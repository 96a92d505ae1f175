#pragma once

#include "chunks.hpp"
#include "configuration.hpp"
#include "cutwidth.hpp"
#include "errors.hpp"
#include "graph.hpp"
#include "instance.hpp"
#include "oracle.hpp"
#include "reachability.hpp"
#include "reductions.hpp"
#include "residues.hpp"
#include "scc.hpp"
#include "segments.hpp"
#include "solver.hpp"
#include "timestamp.hpp"
#include "undirected.hpp"
#include "walk.hpp"
