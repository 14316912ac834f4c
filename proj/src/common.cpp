#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "rcork/errors.hpp"
#include "rcork/io_util.hpp"
#include "rcork/types.hpp"

namespace rcork {

Index dense_cap() {
  constexpr Index default_cap = 2000;
  const char* env = std::getenv("RCORK_DENSE_CAP");
  if (env == nullptr || *env == '\0') {
    return default_cap;
  }
  try {
    const long long v = std::stoll(env);
    return v > 0 ? static_cast<Index>(v) : default_cap;
  } catch (const std::exception&) {
    return default_cap;
  }
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw Error("cannot write " + tmp.string());
    }
    out << content;
    out.flush();
    if (!out) {
      throw Error("write failed for " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, target);
}

}  // namespace rcork
