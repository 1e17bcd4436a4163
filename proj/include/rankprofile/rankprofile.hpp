#pragma once

#include "errors.hpp"
#include "field.hpp"
#include "matrix.hpp"
#include "permutation.hpp"
#include "pluq.hpp"
#include "kernels.hpp"
#include "pivoting.hpp"
#include "base_case.hpp"
#include "tile_pluq.hpp"
#include "oracle.hpp"
#include "decompositions.hpp"
#include "lowrank.hpp"
#include "ring_rank.hpp"
#include "io.hpp"
#include "bench.hpp"
