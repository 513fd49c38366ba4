// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wsr Authors

#pragma once

namespace wsr {

inline constexpr const char* version_string = "0.1.0";

}  // namespace wsr
