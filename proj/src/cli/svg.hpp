#pragma once

#include <ostream>
#include <span>
#include <string>

#include "planar/disc.hpp"
#include "planar/meta.hpp"

namespace planar::cli {

// Static render of a labeled sample and a hypothesis: one <circle> per
// example (blue for label 0, red for label 1) and exactly one <polygon> for
// the hypothesis region (empty points list for the constant-0 classifier).
void write_svg(std::ostream& os, std::span<const LabeledExample> examples,
               const Hypothesis& h);

void write_svg_file(const std::string& path, std::span<const LabeledExample> examples,
                    const Hypothesis& h);

}  // namespace planar::cli
