#pragma once

#include <span>
#include <string>
#include <utility>

#include "hieralign/bscore.hpp"

namespace hieralign {

// Renders one horizontal strip per predicted timeline above a ground-truth
// reference strip: gray bars for the piece, red spans where the prediction
// disagrees with the ground truth (collar 0), black ticks at ground-truth
// line transitions, and blue vertical lines at the given jump times. Output
// is deterministic: equal inputs yield byte-identical SVG.
std::string render_strips(std::span<const std::pair<std::string, LineTimeline>> preds,
                          const LineTimeline& gt,
                          std::span<const double> jump_times = {});

}  // namespace hieralign
