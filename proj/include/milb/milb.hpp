// SPDX-License-Identifier: Apache-2.0
//
// milb: mutual-information lower bounds for pilot-limited multi-user MIMO uplinks
// Copyright (C) 2026 milb authors

#pragma once

#include "allocation.hpp"
#include "analysis.hpp"
#include "gauss_legendre.hpp"
#include "laguerre.hpp"
#include "linklevel.hpp"
#include "mutual_info.hpp"
#include "pilots.hpp"
#include "rng.hpp"
#include "serialize.hpp"
#include "simulator.hpp"
#include "sweep.hpp"
#include "system_config.hpp"
#include "validate.hpp"
#include "wishart_density.hpp"
