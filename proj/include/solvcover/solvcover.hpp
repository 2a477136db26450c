#pragma once

#include "solvcover/bitset.hpp"
#include "solvcover/constructions.hpp"
#include "solvcover/cover_solver.hpp"
#include "solvcover/error.hpp"
#include "solvcover/field.hpp"
#include "solvcover/group_core.hpp"
#include "solvcover/group_table.hpp"
#include "solvcover/io.hpp"
#include "solvcover/permutation.hpp"
#include "solvcover/pipeline.hpp"
#include "solvcover/solvabilizer.hpp"
#include "solvcover/theorems.hpp"
