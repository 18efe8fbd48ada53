//
// Copyright 2026 gsopt contributors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

namespace gsopt {

/// Entry point of the command-line tool. Exit codes: 0 success,
/// 1 solver failure, 2 usage error.
int cli_main(int argc, const char* const* argv);

}  // namespace gsopt
