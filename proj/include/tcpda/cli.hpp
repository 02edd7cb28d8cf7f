#pragma once

#include <string>
#include <vector>

namespace tcpda::cli {

/// Entry point of the `tcpda` tool. args excludes the program name.
/// Returns the process exit code; errors are reported on stderr.
int run(const std::vector<std::string>& args);

/// Applies the TCP_LOG environment variable (trace, debug, info, warn,
/// error, critical, off) to the default logger. Defaults to warn.
void configure_logging();

}  // namespace tcpda::cli
