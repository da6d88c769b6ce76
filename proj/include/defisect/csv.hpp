// defisect: DeFi incident forensics toolkit
// Copyright 2026 The defisect Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

namespace defisect {

// RFC 4180 records: quoted fields may contain commas, doubled quotes and
// newlines. Accepts LF or CRLF line endings; a trailing newline does not
// produce an empty record.
std::vector<std::vector<std::string>> parse_csv(const std::string& text);

// Field encoder, quoting only when the value requires it.
std::string csv_field(const std::string& value);

std::string csv_row(const std::vector<std::string>& fields);

}  // namespace defisect
