// SPDX-License-Identifier: Apache-2.0
#include "mindhash/lexicon.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "mindhash/error.hpp"

namespace mindhash::store {

Lexicon make_lexicon(std::string name, const std::vector<std::string>& words,
                     std::string provenance) {
  Lexicon lexicon{std::move(name), {}, std::move(provenance)};
  std::set<std::string> seen;
  for (const auto& word : words) {
    const bool valid = !word.empty() && std::all_of(word.begin(), word.end(), [](char c) {
      return c >= 'a' && c <= 'z';
    });
    if (!valid) {
      throw Error(ErrorKind::Lexicon,
                  lexicon.name + ": entry '" + word + "' is not lowercase a-z");
    }
    if (seen.insert(word).second) lexicon.words.push_back(word);
  }
  return lexicon;
}

Lexicon load_lexicon(const std::filesystem::path& path, std::string name,
                     std::string provenance) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Lexicon, "cannot open " + path.string());
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    words.push_back(line.substr(first));
  }
  return make_lexicon(std::move(name), words, std::move(provenance));
}

void save_lexicon(const Lexicon& lexicon, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Lexicon, "cannot write " + path.string());
  if (!lexicon.provenance.empty()) out << "# " << lexicon.provenance << '\n';
  for (const auto& word : lexicon.words) out << word << '\n';
}

std::vector<std::string> parse_song(std::string_view lyrics) {
  std::vector<std::string> words;
  std::istringstream in{std::string(lyrics)};
  std::string token;
  while (in >> token) {
    std::string word;
    for (char c : token) {
      const auto u = static_cast<unsigned char>(c);
      if (u < 128 && std::isalpha(u)) word.push_back(static_cast<char>(std::tolower(u)));
    }
    if (!word.empty()) words.push_back(std::move(word));
  }
  return words;
}

SongLibrary load_song_library(const std::filesystem::path& dir) {
  SongLibrary library;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::ifstream in(entry.path());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    std::string title = entry.path().stem().string();
    std::replace(title.begin(), title.end(), '_', ' ');
    library[title] = parse_song(buffer.str());
  }
  return library;
}

}  // namespace mindhash::store
