#pragma once

#include "esnufft/binsort.hpp"
#include "esnufft/error.hpp"
#include "esnufft/fft.hpp"
#include "esnufft/grid.hpp"
#include "esnufft/interp.hpp"
#include "esnufft/kernel.hpp"
#include "esnufft/oracle.hpp"
#include "esnufft/pipeline.hpp"
#include "esnufft/plan.hpp"
#include "esnufft/spread.hpp"
#include "esnufft/thread_pool.hpp"
#include "esnufft/types.hpp"
