#pragma once

namespace wrebeca::cli {

// Exit statuses shared by all subcommands.
enum Exit : int {
    kOk = 0,
    kViolation = 1,  // invariant violated, or LTSs not equivalent
    kUsage = 2,
    kFile = 3,
    kParse = 4,
    kIllFormed = 5,
    kLimit = 6,
    kModelRuntime = 7,
    kPrecondition = 8,
};

int run(int argc, char** argv);

}  // namespace wrebeca::cli
