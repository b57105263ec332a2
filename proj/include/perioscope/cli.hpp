#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace perioscope::cli {

enum ExitCode : int {
    kSuccess = 0,
    kConfigFailure = 1,
    kNumericalFailure = 2,
    kCheckFailure = 3,
};

/// perioscope <trace|verify|analyze|reproduce> [--config PATH] [--out-dir PATH]
///            [--grid-n N] [--delta-xi X]
/// `args` excludes the program name.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

} // namespace perioscope::cli
