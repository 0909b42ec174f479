// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "mindhash/lexicon.hpp"
#include "mindhash/memory_source.hpp"

namespace mindhash::memory {

struct Corpora {
  std::vector<std::string> nouns;
  std::vector<std::string> adjectives;
  std::vector<std::string> verbs;
  std::vector<std::string> rare_words;
  std::vector<std::string> common_words;  // sentence endings
  std::vector<std::string> stories;
  store::SongLibrary songs;

  bool operator==(const Corpora&) const = default;
};

/// Built-in word lists and a generated song library.
const Corpora& default_corpora();

/// Reads nouns.txt, adjectives.txt, verbs.txt, rare_words.txt,
/// common_words.txt, stories.txt and songs/ from a directory. Missing
/// files fall back to the built-in list.
Corpora load_corpora(const std::filesystem::path& dir);

struct ModelConfig {
  int grid_width = 8;
  int grid_height = 8;
  std::string corpora_dir;  // empty: built-in corpora

  bool operator==(const ModelConfig&) const = default;
};

enum class Heading { North, East, South, West };

/// Toroidal grid of labelled places plus where the walk starts.
struct LocationGrid {
  int width = 0;
  int height = 0;
  std::vector<std::string> labels;  // row-major
  Cell start;
  Heading heading = Heading::North;
  int step = 1;

  const std::string& label(const Cell& cell) const {
    return labels[static_cast<std::size_t>(cell.row * width + cell.col)];
  }
};

/// Lowercases and strips everything but a-z.
std::string normalize_website(std::string_view raw);

bool is_vowel(char c);

/// Vowels turn left, everything else turns right; then advance `step`
/// cells, wrapping at the edges. Throws EmptyWebsite.
Walk walk(std::string_view normalized_website, const LocationGrid& grid);

/// Simulated memory configuration. Every answer is a pure function of the
/// seed, the corpora and the question asked.
class MemoryModel final : public MemorySource {
 public:
  MemoryModel(std::uint64_t seed, Corpora corpora, ModelConfig config = {});
  explicit MemoryModel(std::uint64_t seed)
      : MemoryModel(seed, default_corpora()) {}

  std::uint64_t seed() const { return seed_; }
  const ModelConfig& config() const { return config_; }
  const Corpora& corpora() const { return corpora_; }
  const LocationGrid& location() const { return grid_; }

  Walk walk(std::string_view website) const override;
  std::string describe_location(const Walk& walk) const override;
  char favorite_letter() const override { return favorite_letter_; }
  keyboard::DiagonalPolicy diagonal_policy() const override { return policy_; }
  int indexing_base() const override { return indexing_base_; }

  std::string pin() const override { return pin_; }
  std::array<std::string, 4> songs_for(std::string_view mnemonic) const override;
  std::string song_word(std::string_view song, int k) const override;
  char special_tiebreak(char vowel, std::span<const char> candidates) const override;
  std::array<int, 3> shift_group(std::string_view current, int round) const override;

  std::string story() const override { return story_; }
  std::array<StoryElement, 4> story_elements(std::string_view story) const override;
  BlockPosition block_choice(int size, const CharBox& current) const override;
  std::string connection_word(std::string_view story,
                              std::string_view website) const override;

  std::string rare_word() const override { return rare_word_; }
  std::string sentence(std::string_view rare_word,
                       std::string_view website) const override;

  /// Seed and config only; derived state is rebuilt on import.
  std::string to_json() const;
  static MemoryModel from_json(std::string_view text);

 private:
  std::uint64_t seed_;
  Corpora corpora_;
  ModelConfig config_;

  LocationGrid grid_;
  char favorite_letter_ = 'a';
  keyboard::DiagonalPolicy policy_;
  int indexing_base_ = 1;
  std::string pin_;
  std::string story_;
  std::string rare_word_;
  std::vector<std::string> habit_verbs_;
  std::vector<std::string> habit_adjectives_;
  std::vector<std::string> habit_endings_;
};

}  // namespace mindhash::memory
