// SPDX-License-Identifier: Apache-2.0
#include "mindhash/memory_model.hpp"

#include <algorithm>
#include <cctype>

#include <json.hpp>

#include "mindhash/error.hpp"
#include "mindhash/rng.hpp"

namespace mindhash::memory {

std::string_view to_string(StoryElementKind kind) {
  switch (kind) {
    case StoryElementKind::Sad: return "sad";
    case StoryElementKind::MemorableCharacter: return "memorable_character";
    case StoryElementKind::ForwardEvent: return "forward_event";
    case StoryElementKind::Happy: return "happy";
  }
  return "sad";
}

StoryElementKind story_element_kind_from_string(std::string_view text) {
  for (auto kind : {StoryElementKind::Sad, StoryElementKind::MemorableCharacter,
                    StoryElementKind::ForwardEvent, StoryElementKind::Happy}) {
    if (to_string(kind) == text) return kind;
  }
  throw Error(ErrorKind::Validation,
              "unknown story element kind '" + std::string(text) + "'");
}

std::string normalize_website(std::string_view raw) {
  std::string out;
  for (char c : raw) {
    const auto u = static_cast<unsigned char>(c);
    if (std::isalpha(u) && u < 128) out.push_back(static_cast<char>(std::tolower(u)));
  }
  return out;
}

bool is_vowel(char c) {
  switch (std::tolower(static_cast<unsigned char>(c))) {
    case 'a': case 'e': case 'i': case 'o': case 'u': return true;
    default: return false;
  }
}

Walk walk(std::string_view normalized_website, const LocationGrid& grid) {
  if (normalized_website.empty()) {
    throw Error(ErrorKind::EmptyWebsite, "website has no letters");
  }
  Walk out;
  Cell at = grid.start;
  int heading = static_cast<int>(grid.heading);
  for (char c : normalized_website) {
    const Turn turn = is_vowel(c) ? Turn::Left : Turn::Right;
    out.trace.push_back(turn);
    heading = (heading + (turn == Turn::Left ? 3 : 1)) % 4;
    switch (static_cast<Heading>(heading)) {
      case Heading::North: at.row -= grid.step; break;
      case Heading::East: at.col += grid.step; break;
      case Heading::South: at.row += grid.step; break;
      case Heading::West: at.col -= grid.step; break;
    }
    at.row = ((at.row % grid.height) + grid.height) % grid.height;
    at.col = ((at.col % grid.width) + grid.width) % grid.width;
  }
  out.end = at;
  return out;
}

namespace {

void require_non_empty(const std::vector<std::string>& list, const char* name) {
  if (list.empty()) {
    throw Error(ErrorKind::Config, std::string(name) + " corpus is empty");
  }
}

std::vector<std::string> draw_distinct(Rng& rng, const std::vector<std::string>& from,
                                       std::size_t count) {
  std::vector<std::string> pool = from;
  rng.shuffle(pool);
  pool.resize(std::min(count, pool.size()));
  return pool;
}

}  // namespace

MemoryModel::MemoryModel(std::uint64_t seed, Corpora corpora, ModelConfig config)
    : seed_(seed), corpora_(std::move(corpora)), config_(std::move(config)) {
  require_non_empty(corpora_.nouns, "noun");
  require_non_empty(corpora_.adjectives, "adjective");
  require_non_empty(corpora_.verbs, "verb");
  require_non_empty(corpora_.rare_words, "rare-word");
  require_non_empty(corpora_.common_words, "common-word");
  require_non_empty(corpora_.stories, "story");
  if (corpora_.songs.empty()) throw Error(ErrorKind::Config, "song library is empty");
  if (config_.grid_width < 4 || config_.grid_height < 4) {
    throw Error(ErrorKind::Config, "location grid must be at least 4x4");
  }

  grid_.width = config_.grid_width;
  grid_.height = config_.grid_height;
  {
    Rng rng(derive_seed(seed_, "grid"));
    grid_.labels.reserve(static_cast<std::size_t>(grid_.width * grid_.height));
    for (int i = 0; i < grid_.width * grid_.height; ++i) {
      const auto& adjective = rng.pick(corpora_.adjectives);
      const auto& noun = rng.pick(corpora_.nouns);
      grid_.labels.push_back(adjective + " " + noun);
    }
  }
  {
    Rng rng(derive_seed(seed_, "start"));
    grid_.start.row = static_cast<int>(rng.below(grid_.height));
    grid_.start.col = static_cast<int>(rng.below(grid_.width));
    grid_.heading = static_cast<Heading>(rng.below(4));
    grid_.step = static_cast<int>(rng.between(1, 3));
  }
  {
    Rng rng(derive_seed(seed_, "interpretation"));
    favorite_letter_ = static_cast<char>('a' + rng.below(26));
    policy_.vowel_pair_side = rng.chance(0.5) ? keyboard::Side::Left : keyboard::Side::Right;
    policy_.rows_up = static_cast<int>(rng.between(1, 2));
    policy_.use_shifted = rng.chance(0.5);
    indexing_base_ = static_cast<int>(rng.below(2));
  }
  {
    Rng rng(derive_seed(seed_, "pin"));
    for (int i = 0; i < 4; ++i) pin_.push_back(static_cast<char>('0' + rng.below(10)));
  }
  {
    Rng rng(derive_seed(seed_, "secrets"));
    story_ = rng.pick(corpora_.stories);
    rare_word_ = rng.pick(corpora_.rare_words);
  }
  {
    Rng rng(derive_seed(seed_, "habits"));
    habit_verbs_ = draw_distinct(rng, corpora_.verbs, 3);
    habit_adjectives_ = draw_distinct(rng, corpora_.adjectives, 3);
    habit_endings_ = draw_distinct(rng, corpora_.common_words, 3);
  }
}

Walk MemoryModel::walk(std::string_view website) const {
  return memory::walk(website, grid_);
}

std::string MemoryModel::describe_location(const Walk& walk) const {
  if (!walk.end) throw Error(ErrorKind::Config, "simulated walk has no end cell");
  return grid_.label(*walk.end);
}

std::array<std::string, 4> MemoryModel::songs_for(std::string_view mnemonic) const {
  std::array<std::string, 4> out;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const char letter = i < mnemonic.size() ? mnemonic[i] : 'a';
    std::vector<std::string> matching;
    for (const auto& [title, words] : corpora_.songs) {
      if (!title.empty() && std::tolower(static_cast<unsigned char>(title.front())) == letter) {
        matching.push_back(title);
      }
    }
    if (matching.empty()) {
      Rng rng(derive_seed(seed_, std::string("song-any:") + letter));
      auto it = corpora_.songs.begin();
      std::advance(it, static_cast<long>(rng.below(corpora_.songs.size())));
      out[i] = it->first;
    } else {
      Rng rng(derive_seed(seed_, std::string("song:") + letter));
      out[i] = rng.pick(matching);
    }
  }
  return out;
}

std::string MemoryModel::song_word(std::string_view song, int k) const {
  const auto it = corpora_.songs.find(std::string(song));
  if (it == corpora_.songs.end()) {
    throw Error(ErrorKind::Config, "unknown song '" + std::string(song) + "'");
  }
  if (it->second.size() < 10 || k < 1 || static_cast<std::size_t>(k) > it->second.size()) {
    throw Error(ErrorKind::SongTooShort,
                "'" + std::string(song) + "' has " + std::to_string(it->second.size()) +
                    " words, need at least 10");
  }
  return it->second[static_cast<std::size_t>(k - 1)];
}

char MemoryModel::special_tiebreak(char vowel, std::span<const char> candidates) const {
  if (candidates.empty()) throw Error(ErrorKind::Config, "no tie candidates");
  if (candidates.size() == 1) return candidates.front();
  Rng rng(derive_seed(seed_, std::string("tiebreak:") + vowel));
  return candidates[rng.below(candidates.size())];
}

std::array<int, 3> MemoryModel::shift_group(std::string_view current, int round) const {
  const auto length = current.size();
  if (length < 3) throw Error(ErrorKind::Config, "shift group needs at least 3 characters");
  Rng rng(derive_seed(seed_, "shift", length * 2 + static_cast<std::uint64_t>(round)));
  std::vector<int> indices(length);
  for (std::size_t i = 0; i < length; ++i) indices[i] = static_cast<int>(i);
  for (std::size_t i = 0; i < 3; ++i) {
    std::swap(indices[i], indices[i + rng.below(length - i)]);
  }
  std::array<int, 3> out{indices[0], indices[1], indices[2]};
  std::sort(out.begin(), out.end());
  return out;
}

std::array<StoryElement, 4> MemoryModel::story_elements(std::string_view story) const {
  Rng rng(derive_seed(seed_, "story:" + std::string(story)));
  std::array<StoryElement, 4> out;
  for (int i = 0; i < 4; ++i) {
    out[static_cast<std::size_t>(i)] =
        StoryElement{static_cast<StoryElementKind>(rng.below(4)), i + 1};
  }
  return out;
}

BlockPosition MemoryModel::block_choice(int size, const CharBox&) const {
  Rng rng(derive_seed(seed_, "block", static_cast<std::uint64_t>(size)));
  const auto span = static_cast<std::uint64_t>(kBoxSize - size + 1);
  return BlockPosition{static_cast<int>(rng.below(span)), static_cast<int>(rng.below(span))};
}

std::string MemoryModel::connection_word(std::string_view story,
                                         std::string_view website) const {
  Rng rng(derive_seed(seed_, "connect:" + std::string(story) + "/" + std::string(website)));
  std::string out = rng.pick(corpora_.nouns);
  if (rng.chance(0.5)) out += " " + rng.pick(corpora_.nouns);
  return out;
}

std::string MemoryModel::sentence(std::string_view rare_word,
                                  std::string_view website) const {
  Rng rng(derive_seed(seed_, "sentence:" + std::string(website)));
  const std::string determiner = rng.chance(0.5) ? "my" : "the";
  const auto& verb = rng.pick(habit_verbs_);
  const auto& adjective = rng.pick(habit_adjectives_);
  const auto& ending = rng.pick(habit_endings_);
  const std::string body = determiner + " " + std::string(website) + " " + verb + " " +
                           adjective + " " + std::string(rare_word);
  // Habitual adverbs sometimes lead the sentence instead of closing it.
  return rng.chance(0.5) ? ending + " " + body : body + " " + ending;
}

std::string MemoryModel::to_json() const {
  nlohmann::json doc = {
      {"seed", seed_},
      {"grid_width", config_.grid_width},
      {"grid_height", config_.grid_height},
      {"corpora_dir", config_.corpora_dir},
  };
  return doc.dump(2);
}

MemoryModel MemoryModel::from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Config, std::string("model document: ") + e.what());
  }
  ModelConfig config;
  config.grid_width = doc.value("grid_width", config.grid_width);
  config.grid_height = doc.value("grid_height", config.grid_height);
  config.corpora_dir = doc.value("corpora_dir", std::string());
  const auto seed = doc.at("seed").get<std::uint64_t>();
  Corpora corpora =
      config.corpora_dir.empty() ? default_corpora() : load_corpora(config.corpora_dir);
  return MemoryModel(seed, std::move(corpora), config);
}

Corpora load_corpora(const std::filesystem::path& dir) {
  Corpora c = default_corpora();
  const auto maybe = [&](const char* file, std::vector<std::string>& into) {
    const auto path = dir / file;
    if (std::filesystem::exists(path)) into = store::load_lexicon(path, file).words;
  };
  maybe("nouns.txt", c.nouns);
  maybe("adjectives.txt", c.adjectives);
  maybe("verbs.txt", c.verbs);
  maybe("rare_words.txt", c.rare_words);
  maybe("common_words.txt", c.common_words);
  maybe("stories.txt", c.stories);
  if (std::filesystem::is_directory(dir / "songs")) {
    c.songs = store::load_song_library(dir / "songs");
  }
  return c;
}

}  // namespace mindhash::memory
