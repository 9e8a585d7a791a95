// Copyright 2026 The alpharing Authors
// SPDX-License-Identifier: Apache-2.0
//! \file parallel.hpp
//! Static-partition parallel loop. Work items are independent, so results
//! never depend on the worker count.
#pragma once

#include <cstddef>
#include <functional>

namespace alpharing
{
//! Worker count: explicit override, else ALPHARING_WORKERS, else hardware.
int worker_count();

//! Override the worker count for this process; 0 restores the default.
void set_worker_count(int n);

//! Call fn(i) for i in [0, n), split into contiguous chunks across workers.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);
} // namespace alpharing
