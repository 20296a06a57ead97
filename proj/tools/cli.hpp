#pragma once

namespace cantor_beam::cli {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kBadConfig = 2, kIoError = 3 };

int run(int argc, char** argv);

}  // namespace cantor_beam::cli
