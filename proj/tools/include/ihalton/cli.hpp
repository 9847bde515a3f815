#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace ihalton::cli {

/// Runs one `ihalton` invocation; returns the process exit code.
/// Usage errors return 2, runtime failures 1.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// "a..b" (inclusive), "2^a..2^b" (powers of two), "2^a", or plain integers,
/// separated by commas. Throws std::runtime_error on malformed or empty input.
std::vector<std::uint64_t> parse_index_list(std::string_view text);

}  // namespace ihalton::cli
