#pragma once

#include <string>
#include <vector>

#include "stewart/sim.hpp"

namespace stewart {

// Writes positions.svg (the six pose axes, desired vs true vs estimated),
// forces.svg (the six actuator forces), and errors.svg (e_l, e_t, e_cs)
// into `dir`, creating it if needed. Self-contained SVG, no external
// references. errors.svg embeds the final e_l value in a <desc> element in
// full precision so downstream checks can compare it against the CSV.
void render_plots(const std::vector<SimRecord>& records, const std::string& dir);

}  // namespace stewart
