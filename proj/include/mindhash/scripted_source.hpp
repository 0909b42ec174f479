// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <string>

#include <json.hpp>

#include "mindhash/error.hpp"
#include "mindhash/memory_source.hpp"

namespace mindhash::memory {

/// One question put to a person. `key` identifies the question (including
/// its arguments) and doubles as the answer's slot in a script.
struct Prompt {
  std::string kind;
  std::string key;
  nlohmann::json payload = nlohmann::json::object();
};

/// Thrown by ScriptedSource when a scheme asks something not yet answered.
class PendingQuery : public Error {
 public:
  explicit PendingQuery(Prompt prompt);
  const Prompt& prompt() const { return prompt_; }

 private:
  Prompt prompt_;
};

/// Throws ValidationError when `answer` does not fit the prompt's kind.
void validate_answer(const Prompt& prompt, const nlohmann::json& answer);

/// A memory source backed by recorded answers. This is how a live person
/// runs a scheme: every unanswered question surfaces as a PendingQuery, and
/// the same script replays to the same password.
class ScriptedSource final : public MemorySource {
 public:
  ScriptedSource() = default;
  explicit ScriptedSource(nlohmann::json answers);

  /// Validates then stores the answer under prompt.key.
  void answer(const Prompt& prompt, nlohmann::json value);
  const nlohmann::json& answers() const { return answers_; }

  Walk walk(std::string_view website) const override;
  std::string describe_location(const Walk& walk) const override;
  char favorite_letter() const override;
  keyboard::DiagonalPolicy diagonal_policy() const override;
  int indexing_base() const override;

  std::string pin() const override;
  std::array<std::string, 4> songs_for(std::string_view mnemonic) const override;
  std::string song_word(std::string_view song, int k) const override;
  char special_tiebreak(char vowel, std::span<const char> candidates) const override;
  std::array<int, 3> shift_group(std::string_view current, int round) const override;

  std::string story() const override;
  std::array<StoryElement, 4> story_elements(std::string_view story) const override;
  BlockPosition block_choice(int size, const CharBox& current) const override;
  std::string connection_word(std::string_view story,
                              std::string_view website) const override;

  std::string rare_word() const override;
  std::string sentence(std::string_view rare_word,
                       std::string_view website) const override;

 private:
  const nlohmann::json& lookup(const Prompt& prompt) const;

  nlohmann::json answers_ = nlohmann::json::object();
};

/// Forwards to another source and writes down every answer in script form.
class RecordingSource final : public MemorySource {
 public:
  explicit RecordingSource(const MemorySource& inner) : inner_(inner) {}

  const nlohmann::json& answers() const { return answers_; }

  Walk walk(std::string_view website) const override;
  std::string describe_location(const Walk& walk) const override;
  char favorite_letter() const override;
  keyboard::DiagonalPolicy diagonal_policy() const override;
  int indexing_base() const override;

  std::string pin() const override;
  std::array<std::string, 4> songs_for(std::string_view mnemonic) const override;
  std::string song_word(std::string_view song, int k) const override;
  char special_tiebreak(char vowel, std::span<const char> candidates) const override;
  std::array<int, 3> shift_group(std::string_view current, int round) const override;

  std::string story() const override;
  std::array<StoryElement, 4> story_elements(std::string_view story) const override;
  BlockPosition block_choice(int size, const CharBox& current) const override;
  std::string connection_word(std::string_view story,
                              std::string_view website) const override;

  std::string rare_word() const override;
  std::string sentence(std::string_view rare_word,
                       std::string_view website) const override;

 private:
  void record(const Prompt& prompt, nlohmann::json value) const;

  const MemorySource& inner_;
  mutable nlohmann::json answers_ = nlohmann::json::object();
};

}  // namespace mindhash::memory
