// Copyright 2026 The gamowkit Authors
// SPDX-License-Identifier: Apache-2.0

// Umbrella header for the numerical modules. The JSON/CLI layer lives in
// <gamowkit/io/cli.hpp> and additionally needs nlohmann/json.

#pragma once

#include <gamowkit/core.hpp>
#include <gamowkit/evolution.hpp>
#include <gamowkit/goldenrule.hpp>
#include <gamowkit/openquantum.hpp>
#include <gamowkit/resonance.hpp>
#include <gamowkit/scattering.hpp>
#include <gamowkit/spectral.hpp>
