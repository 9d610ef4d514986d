#pragma once

// Convenience umbrella for the whole library.

#include "coindex/io.hpp"
#include "coindex/joint_stats.hpp"
#include "coindex/kde.hpp"
#include "coindex/mfields.hpp"
#include "coindex/mfunction.hpp"
#include "coindex/multiway.hpp"
#include "coindex/parallel.hpp"
#include "coindex/rng.hpp"
#include "coindex/set_expr.hpp"
#include "coindex/set_indices.hpp"
#include "coindex/sliding_squares.hpp"
