#pragma once

namespace semd {

/// Entry point of the `serialemd` tool: decompose / synth / bench /
/// recognize subcommands. Returns the process exit code: 0 on success,
/// 2 on bad input (flags, file formats, parse errors), 3 when the face
/// dataset is missing, 1 on unexpected internal errors.
int run_cli(int argc, const char* const* argv);

}  // namespace semd
