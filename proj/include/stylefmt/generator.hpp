#pragma once

// Seeded generator of blocklang files that follow one layout style exactly.

#include <cstdint>
#include <vector>

#include "stylefmt/evaluation.hpp"

namespace stylefmt {

struct StyleConfig {
  int indent = 4;
  bool brace_on_new_line = false;
  // Argument and parameter lists at least this long (in non-blank
  // characters) are wrapped one member per line, aligned under the first.
  int wrap_threshold = 40;
  int blank_lines_between_functions = 1;
};

struct GeneratorOptions {
  int min_functions = 6;
  int max_functions = 10;
  // When positive, functions are added until the file has this many lines.
  int min_lines = 0;
  bool comments = true;
};

// Throws std::invalid_argument when n_files < 1.
std::vector<SourceFile> generate_corpus(const StyleConfig& style, int n_files,
                                        std::uint64_t seed,
                                        const GeneratorOptions& options = {});

SourceFile generate_file(const StyleConfig& style, std::uint64_t seed,
                         const GeneratorOptions& options = {});

}  // namespace stylefmt
