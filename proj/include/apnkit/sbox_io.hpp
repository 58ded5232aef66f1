#pragma once

#include <filesystem>
#include <istream>
#include <ostream>
#include <string_view>

#include "apnkit/vector_function.hpp"

// S-box text files. Two layouts are accepted:
//   lines: 2^n lines, line x holds F(x) in hex;
//   blob:  one line of 2^n fixed-width entries, width ceil(n/4) hex digits.
// The writer always emits lowercase fixed-width entries, so a written file
// reads back to the same function and re-writes to the same bytes.
namespace apnkit::sbox_io {

enum class Layout { Lines, Blob };

VectorFunction parse(std::string_view text, std::string label = {});
VectorFunction read(std::istream& in, std::string label = {});
VectorFunction read_file(const std::filesystem::path& path);

void write(const VectorFunction& f, std::ostream& out, Layout layout = Layout::Lines);
void write_file(const VectorFunction& f, const std::filesystem::path& path, Layout layout = Layout::Lines);

}  // namespace apnkit::sbox_io
