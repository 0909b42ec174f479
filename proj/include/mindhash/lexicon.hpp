// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace mindhash::store {

/// Ordered list of unique lowercase words.
struct Lexicon {
  std::string name;
  std::vector<std::string> words;
  std::string provenance;
};

/// Validates entries (lowercase a-z only) and drops repeats, keeping the
/// first occurrence. Throws LexiconError on an invalid entry.
Lexicon make_lexicon(std::string name, const std::vector<std::string>& words,
                     std::string provenance = {});

/// One entry per line; blank lines and lines starting with '#' are skipped.
Lexicon load_lexicon(const std::filesystem::path& path, std::string name,
                     std::string provenance = {});
void save_lexicon(const Lexicon& lexicon, const std::filesystem::path& path);

using SongLibrary = std::map<std::string, std::vector<std::string>>;

/// Whitespace-delimited lyrics, lowercased with non-letters removed.
std::vector<std::string> parse_song(std::string_view lyrics);

/// One file per song; the title is the file stem with '_' read as a space.
SongLibrary load_song_library(const std::filesystem::path& dir);

}  // namespace mindhash::store
