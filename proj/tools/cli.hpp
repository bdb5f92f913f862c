// Copyright 2026 The VIOLIN Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>

namespace violin::cli {

/// Runs the `violin` command line. Results go to `out`; failures are written
/// to `err` as {"error": <code>, "message": <text>} and return nonzero.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace violin::cli
