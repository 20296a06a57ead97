#pragma once

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

namespace test_support {

struct CliResult {
    int exit_code = -1;
    std::string out;
};

/// Runs the cantor_beam binary with the given argument string; stderr is discarded.
inline CliResult run_cli(const std::string& args) {
    const std::string cmd = std::string("'") + CANTOR_BEAM_CLI + "' " + args + " 2>/dev/null";
    CliResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

}  // namespace test_support
