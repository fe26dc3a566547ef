#pragma once

// Batch command surface. `run` is what the tcawp executable calls; tests
// drive it directly with their own streams.

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "tcawp/checker.hpp"
#include "tcawp/repair.hpp"

namespace tcawp {

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kIo = 1;
inline constexpr int kUsage = 2;
inline constexpr int kInternal = 3;
}  // namespace exit_code

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

// Record fields shared by several commands.
nlohmann::ordered_json verdict_json(const Verdict& v);  // {"verdict", "issues", ["reason"]}
nlohmann::ordered_json repairs_json(const RepairLog& log);

}  // namespace tcawp
