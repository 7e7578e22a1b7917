#pragma once

#include <optional>
#include <string>
#include <vector>

#include "acsearch/presentation.hpp"

namespace acs {

struct InstanceRecord {
  std::string id;
  Presentation presentation;
  /// Published trivialization length, when known.
  std::optional<int> known_length;
};

/// AK3 and the rank-2 T-instances with published trivialization lengths.
const std::vector<InstanceRecord>& catalog();

std::optional<InstanceRecord> find_instance(const std::string& id);

}  // namespace acs
