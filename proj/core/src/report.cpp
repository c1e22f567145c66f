#include "dqa/report.hpp"

namespace dqa {

std::string content_hash(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

std::string canon_dump(const nlohmann::json& j, int indent) {
  return j.dump(indent);
}

}  // namespace dqa
