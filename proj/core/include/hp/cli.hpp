#pragma once

namespace hp {

// Full command-line entry point: parses argv, dispatches the subcommand,
// writes artifacts, and maps failures to exit codes (0 success, 2 invalid
// input, 3 numerical failure after escalation).
int cli_main(int argc, char** argv);

}  // namespace hp
