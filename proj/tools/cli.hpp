#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace onx {

// Runs one command against the given streams and returns the process exit
// code: 0 success / property holds, 1 property fails or solver stall,
// 2 invalid input, 3 cap or budget exceeded. Every command writes a single
// JSON report to `out`; errors go to `err` as JSON too. Deterministic: the
// same arguments (and seeds) produce byte-identical reports.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace onx
