#pragma once

#include <string>

namespace rcork {

/// Writes content to a temporary file next to path, then renames it over path.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace rcork
