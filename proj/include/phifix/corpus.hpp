#pragma once

#include <span>
#include <string_view>

namespace phifix {

// The bundled scenarios, compiled in so `corpus` runs anywhere. The same
// texts ship as corpus/*.fxl for editing and for `analyze`.
struct CorpusScenario {
    std::string_view name;
    std::string_view text;
};

std::span<const CorpusScenario> corpus_scenarios();

}  // namespace phifix
