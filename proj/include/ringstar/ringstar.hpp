#pragma once

#include "ringstar/benders.hpp"
#include "ringstar/bound.hpp"
#include "ringstar/cut.hpp"
#include "ringstar/evaluate.hpp"
#include "ringstar/grasp.hpp"
#include "ringstar/io.hpp"
#include "ringstar/milp.hpp"
#include "ringstar/model.hpp"
#include "ringstar/oracle.hpp"
#include "ringstar/result.hpp"
#include "ringstar/solve.hpp"
#include "ringstar/solver.hpp"
#include "ringstar/sweep.hpp"
