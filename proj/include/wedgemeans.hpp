#pragma once

// Wedge-volume symmetric means for vector families, the Maclaurin/Newton
// style inequality checkers built on them, zonotope intrinsic volumes, and
// a seeded randomized violation search.

#include "wedgemeans/barycentric.hpp"
#include "wedgemeans/errors.hpp"
#include "wedgemeans/family.hpp"
#include "wedgemeans/gram.hpp"
#include "wedgemeans/inequalities.hpp"
#include "wedgemeans/io.hpp"
#include "wedgemeans/maclaurin.hpp"
#include "wedgemeans/numeric.hpp"
#include "wedgemeans/orthogonalize.hpp"
#include "wedgemeans/power_means.hpp"
#include "wedgemeans/random.hpp"
#include "wedgemeans/reduction.hpp"
#include "wedgemeans/search.hpp"
#include "wedgemeans/subsets.hpp"
#include "wedgemeans/wedge.hpp"
#include "wedgemeans/zonotope.hpp"
