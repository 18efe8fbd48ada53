//
// Copyright 2026 gsopt contributors
// SPDX-License-Identifier: Apache-2.0
//

#include "gsopt/cli.hpp"

int main(int argc, char** argv) { return gsopt::cli_main(argc, argv); }
