// Copyright 2026 The lbf Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "lbf/bma.hpp"
#include "lbf/codec.hpp"
#include "lbf/error.hpp"
#include "lbf/metrics.hpp"
#include "lbf/sweep.hpp"
#include "lbf/trajectory.hpp"
#include "lbf/video.hpp"
#include "lbf/video_io.hpp"
