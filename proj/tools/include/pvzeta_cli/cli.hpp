#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pvzeta::cli {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

/// Runs one command. args excludes the program name. Exit codes: 0 ok,
/// 1 a mathematical check failed, 2 usage error.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pvzeta::cli
