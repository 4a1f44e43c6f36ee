#pragma once

#include <string>

#include "slicegeo/space.hpp"

namespace slicegeo {

/// Space-spec file format (JSON, UTF-8): object with a "kind" discriminator.
/// "p" accepts a number or the string "inf". load -> save -> load is identity.
std::string space_to_json(const SpaceSpec& spec);
SpaceSpec space_from_json(const std::string& text);

SpaceSpec load_space(const std::string& path);
void save_space(const SpaceSpec& spec, const std::string& path);

bool same_spec(const SpaceSpec& a, const SpaceSpec& b);

}  // namespace slicegeo
