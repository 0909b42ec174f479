// SPDX-License-Identifier: Apache-2.0
#include <array>
#include <cctype>
#include <string>

#include "mindhash/memory_model.hpp"
#include "mindhash/rng.hpp"

namespace mindhash::memory {
namespace {

constexpr const char* kNouns[] = {
    "apple", "anchor", "attic", "arch", "bird", "bench", "basket", "bridge",
    "bottle", "barn", "candle", "chair", "clock", "curtain", "cabinet", "carpet",
    "door", "desk", "drawer", "dome", "elephant", "easel", "engine", "elbow",
    "fountain", "fence", "fridge", "feather", "garden", "gate", "guitar", "globe",
    "hallway", "hammock", "harbor", "helmet", "island", "igloo", "iron", "ivy",
    "jar", "jacket", "jungle", "jewel", "kite", "kettle", "kitchen", "key",
    "lamp", "ladder", "lantern", "library", "mirror", "meadow", "mailbox", "mountain",
    "nest", "needle", "notebook", "napkin", "owl", "orchard", "oven", "ocean",
    "piano", "pillow", "pond", "porch", "queen", "quilt", "quarry", "quiver",
    "river", "rug", "roof", "radio", "sofa", "staircase", "shelf", "statue",
    "table", "tower", "tree", "teapot", "umbrella", "uniform", "urn", "utensil",
    "violin", "valley", "vase", "veranda", "window", "wardrobe", "wall", "well",
    "xylophone", "xenon", "yacht", "yarn", "yard", "yoke", "zebra", "zipper",
    "zoo", "zither", "balcony", "bucket", "cushion", "doorway", "fireplace", "garage",
    "hedge", "lawn", "pantry", "poster", "railing", "sink", "stool", "tile",
    "window", "wheel", "blanket", "bookcase", "chimney", "corridor", "cupboard", "dresser",
    "faucet", "frame", "gutter", "hook", "kennel", "locker", "mantel", "pillar",
    "plant", "shutter", "skylight", "stove", "swing", "trellis", "tub", "vent",
};

constexpr const char* kAdjectives[] = {
    "white", "red", "blue", "green", "yellow", "golden", "silver", "black",
    "brown", "purple", "orange", "pink", "grey", "old", "new", "tall",
    "short", "wide", "narrow", "broken", "shiny", "dusty", "wooden", "stone",
    "glass", "round", "square", "soft", "hard", "warm", "cold", "quiet",
    "noisy", "bright", "dark", "tiny", "huge", "empty", "full", "open",
    "closed", "crooked", "straight", "painted", "faded", "striped", "spotted", "velvet",
    "rusty", "polished", "cracked", "hollow", "heavy", "light", "smooth", "rough",
    "sleepy", "happy", "lonely", "curious", "ancient", "modern", "tidy", "messy",
    "fragrant", "damp", "dry", "sunny", "shady", "frozen", "leafy", "sandy",
};

constexpr const char* kVerbs[] = {
    "loves", "hides", "holds", "keeps", "finds", "sings", "paints", "follows",
    "watches", "carries", "remembers", "chases", "builds", "guards", "opens", "sends",
    "brings", "hears", "tells", "buys", "reads", "wears", "feeds", "meets",
    "visits", "greets", "borrows", "counts", "draws", "fixes", "hugs", "answers",
};

constexpr const char* kRareWords[] = {
    "serendipity", "petrichor", "sonder", "hiraeth", "susurrus", "limerence",
    "apricity", "vellichor", "ineffable", "halcyon", "ephemeral", "mellifluous",
    "defenestration", "sesquipedalian", "quixotic", "lagniappe", "saudade",
    "komorebi", "tsundoku", "wabisabi", "hygge", "gezellig", "fernweh",
    "schadenfreude", "zeitgeist", "kummerspeck", "jayus", "mamihlapinatapai",
    "cafune", "sobremesa", "meraki", "ubuntu", "toska", "dalliance",
    "syzygy", "ozymandias", "brouhaha", "gobbledygook", "bumbershoot",
    "flibbertigibbet", "lollygag", "snollygoster", "widdershins", "cattywampus",
    "kerfuffle", "collywobbles", "discombobulate", "hullabaloo", "skedaddle",
    "taradiddle", "bamboozle", "cacophony", "nincompoop", "pandemonium",
    "rigmarole", "shenanigans", "whippersnapper", "zugzwang", "quokka",
    "axolotl", "pangolin", "narwhal", "okapi", "aardvark", "capybara",
    "tardigrade", "nudibranch", "saxifrage", "gossamer", "obsidian",
    "chiaroscuro", "palimpsest", "penumbra", "anemone", "bergamot",
    "cardamom", "marzipan", "tamarind", "quinoa", "kohlrabi",
};

constexpr const char* kCommonWords[] = {
    "today", "again", "always", "tonight", "forever", "daily", "quickly",
    "slowly", "together", "outside", "inside", "somewhere", "everywhere",
    "sometimes", "often", "gladly", "softly", "loudly", "early", "later",
};

constexpr const char* kStories[] = {
    "tarzan", "cinderella", "pinocchio", "aladdin", "rapunzel", "hercules",
    "mulan", "bambi", "dumbo", "heidi", "matilda", "peterpan", "snowwhite",
    "robinhood", "sinbad", "gulliver", "frankenstein", "dracula", "beowulf",
    "odyssey", "ramayana", "mahabharata", "panchatantra", "jatakatales",
    "alice", "oliver", "pollyanna", "tomthumb", "goldilocks", "rumpelstiltskin",
};

template <std::size_t N>
std::vector<std::string> to_vector(const char* const (&words)[N]) {
  std::vector<std::string> out;
  out.reserve(N);
  for (const char* word : words) {
    std::string w(word);
    bool seen = false;
    for (const auto& existing : out) seen = seen || existing == w;
    if (!seen) out.push_back(std::move(w));
  }
  return out;
}

/// Two songs per initial letter, titled "<noun> <adjective>" with lyrics
/// drawn from the other lists by a fixed generator.
store::SongLibrary generate_songs(const Corpora& c) {
  store::SongLibrary songs;
  Rng rng(0x5eed50e6ULL);
  std::vector<std::string> lyric_words;
  for (const auto* list : {&c.nouns, &c.adjectives, &c.verbs, &c.common_words}) {
    lyric_words.insert(lyric_words.end(), list->begin(), list->end());
  }
  for (char letter = 'a'; letter <= 'z'; ++letter) {
    int made = 0;
    for (const auto& noun : c.nouns) {
      if (noun.front() != letter || made == 2) continue;
      std::string title = noun + " " + rng.pick(c.adjectives);
      std::vector<std::string> lyrics;
      const auto length = 12 + rng.below(12);
      for (std::uint64_t i = 0; i < length; ++i) lyrics.push_back(rng.pick(lyric_words));
      songs.emplace(std::move(title), std::move(lyrics));
      ++made;
    }
  }
  return songs;
}

}  // namespace

const Corpora& default_corpora() {
  static const Corpora corpora = [] {
    Corpora c;
    c.nouns = to_vector(kNouns);
    c.adjectives = to_vector(kAdjectives);
    c.verbs = to_vector(kVerbs);
    c.rare_words = to_vector(kRareWords);
    c.common_words = to_vector(kCommonWords);
    c.stories = to_vector(kStories);
    c.songs = generate_songs(c);
    return c;
  }();
  return corpora;
}

}  // namespace mindhash::memory
