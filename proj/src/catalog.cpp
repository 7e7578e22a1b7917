#include "acsearch/catalog.hpp"

#include <algorithm>

#include "acsearch/text.hpp"

namespace acs {

namespace {

struct RawInstance {
  const char* id;
  const char* text;
  int known_length;  // 0 = unknown
};

// Generators relabelled x0 -> a, x1 -> b.
constexpr RawInstance kInstances[] = {
    {"AK3", "<a,b|a^3B^4,abaBAB>", 0},
    {"T1", "<a,b|a^2bAB,b^2aBA>", 6},
    {"T5", "<a,b|a^2b^2AB^2,b^2a^2BA^2>", 10},
    {"T11", "<a,b|a^3b^2A^2B^2,b^3a^2B^2A^2>", 14},
    {"T13", "<a,b|a^2bAbAB,b^2aBaBA>", 7},
    {"T29", "<a,b|a^3b^3A^2B^3,b^3a^3B^2A^3>", 21},
    {"T31", "<a,b|a^3bAbAB^2,b^3aBaBA^2>", 10},
    {"T34", "<a,b|a^2b^2aBA^2B,b^2a^2bAB^2A>", 10},
    {"T35", "<a,b|a^2b^2AbAB^2,b^2a^2BaBA^2>", 24},
    {"T39", "<a,b|a^2bAb^2AB^2,b^2aBa^2BA^2>", 10},
    {"T56", "<a,b|a^4b^3A^3B^3,b^4a^3B^3A^3>", 25},
    {"T61", "<a,b|a^3b^2AbA^2B^2,b^3a^2BaB^2A^2>", 14},
    {"T63", "<a,b|a^3b^2AB^3Ab,b^3a^2BA^3Ba>", 24},
    {"T66", "<a,b|a^3bA^2b^2AB^2,b^3aB^2a^2BA^2>", 14},
    {"T67", "<a,b|a^3bAb^2AB^3,b^3aBa^2BA^3>", 22},
    {"T76", "<a,b|a^2babABAB,b^2abaBABA>", 10},
    {"T81", "<a,b|a^2bAbABaB,b^2aBaBAbA>", 19},
    {"T82", "<a,b|a^2bABabAB,b^2aBAbaBA>", 10},
    {"T84", "<a,b|a^2BabAbAB,b^2AbaBaBA>", 15},
    {"T85", "<a,b|ababA^2BaB,babaB^2AbA>", 24},
};

}  // namespace

const std::vector<InstanceRecord>& catalog() {
  static const std::vector<InstanceRecord> records = [] {
    std::vector<InstanceRecord> out;
    for (const RawInstance& r : kInstances) {
      out.push_back(InstanceRecord{r.id, parse_presentation(r.text),
                                   r.known_length > 0 ? std::optional<int>(r.known_length) : std::nullopt});
    }
    return out;
  }();
  return records;
}

std::optional<InstanceRecord> find_instance(const std::string& id) {
  const auto& all = catalog();
  const auto it = std::find_if(all.begin(), all.end(), [&](const InstanceRecord& r) { return r.id == id; });
  if (it == all.end()) return std::nullopt;
  return *it;
}

}  // namespace acs
