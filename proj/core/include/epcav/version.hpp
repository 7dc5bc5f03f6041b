// Copyright (c) 2026 The epcav developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace epcav {

// Bumping the version invalidates every cache entry; keep it in sync with
// the CMake project version.
inline constexpr const char* kVersion = "0.1.0";

// Version of the persisted SweepResult / ep.json schema.
inline constexpr int kSchemaVersion = 1;

}  // namespace epcav
