#pragma once

namespace embias {

/// Parses argv and runs one subcommand. Returns the process exit code:
/// 0 success, 1 usage error, 2 data or contract error.
int run_cli(int argc, char** argv);

}  // namespace embias
