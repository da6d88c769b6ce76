// defisect: DeFi incident forensics toolkit
// Copyright 2026 The defisect Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

namespace defisect {

std::string read_file(const std::string& path);

// Writes through a temp file in the same directory, then renames, so a
// crash never leaves a half-written output behind.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace defisect
