#pragma once

#include "sparse_lcp/bench.hpp"
#include "sparse_lcp/instance_io.hpp"
#include "sparse_lcp/lemke.hpp"
#include "sparse_lcp/linalg.hpp"
#include "sparse_lcp/merit.hpp"
#include "sparse_lcp/nhtp.hpp"
#include "sparse_lcp/problems.hpp"
#include "sparse_lcp/tuning.hpp"
#include "sparse_lcp/types.hpp"
