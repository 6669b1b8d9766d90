#pragma once

#include <string_view>

// Seed data files compiled into the library (see core/data/).
namespace gamekg::data {

std::string_view lexicon_json() noexcept;
std::string_view synonyms_json() noexcept;
std::string_view name_pools_json() noexcept;

}  // namespace gamekg::data
