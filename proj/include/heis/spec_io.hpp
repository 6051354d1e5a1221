#pragma once

#include <string>

#include "heis/dgcat.hpp"
#include "heis/heisenberg.hpp"

namespace heis {

// Space files: {"basis": [...], "parity": ["even"|"odd", ...], "chi": [["p/q", ...], ...]}.
// Built-in names: rank1-even, rank1-odd, rank2-mixed; a bare "<name>.spec" that does
// not exist on disk falls back to the built-in <name>.
SpacePtr parse_space(const std::string& json_text);
SpacePtr load_space(const std::string& path_or_name);

struct CategorySpec {
    CatPtr cat;
    ActionPtr action;  // null unless the file carries an "action" table
};

// Category files: see README for the keys objects/homs/differential/composition/action.
// Built-in names: point, two-points, acyclic-pair, dual-numbers:<k>, sym:<name>:<n>.
CategorySpec parse_category(const std::string& json_text);
CategorySpec load_category(const std::string& path_or_name);

}  // namespace heis
