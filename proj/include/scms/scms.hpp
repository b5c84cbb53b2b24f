#pragma once

#include "scms/alist.hpp"
#include "scms/channel.hpp"
#include "scms/computation_tree.hpp"
#include "scms/csv.hpp"
#include "scms/decoder.hpp"
#include "scms/degree_distribution.hpp"
#include "scms/density_evolution.hpp"
#include "scms/gaussian.hpp"
#include "scms/graph_sample.hpp"
#include "scms/monte_carlo.hpp"
#include "scms/qc.hpp"
#include "scms/quant.hpp"
#include "scms/rng.hpp"
#include "scms/tanner_graph.hpp"
