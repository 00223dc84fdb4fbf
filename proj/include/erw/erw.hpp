#pragma once

#include "erw/analysis.hpp"
#include "erw/error.hpp"
#include "erw/history.hpp"
#include "erw/kernel.hpp"
#include "erw/oracle.hpp"
#include "erw/parallel.hpp"
#include "erw/params.hpp"
#include "erw/pmf.hpp"
#include "erw/rmf.hpp"
#include "erw/rng.hpp"
#include "erw/stats.hpp"
#include "erw/summary.hpp"
#include "erw/walk.hpp"
