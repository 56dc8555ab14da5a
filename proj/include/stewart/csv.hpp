#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "stewart/sim.hpp"

namespace stewart {

// Column order: t, true pose (6), true velocity (6), desired pose (6),
// estimate (12), measurement (12), virtual control (6), actuator forces (6),
// e_l, e_t, e_cs. 58 columns, one header row, values printed with 17
// significant digits so doubles survive a round trip exactly.
extern const std::vector<std::string> kCsvColumns;

void write_csv(const std::vector<SimRecord>& records, std::ostream& out);
void write_csv(const std::vector<SimRecord>& records, const std::string& path);

// Parses a file produced by write_csv. Throws std::runtime_error on a
// malformed header or row.
std::vector<SimRecord> read_csv(const std::string& path);

}  // namespace stewart
