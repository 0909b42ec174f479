// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <functional>
#include <set>

#include "mindhash/error.hpp"
#include "mindhash/memory_model.hpp"
#include "mindhash/schemes.hpp"
#include "mindhash/scripted_source.hpp"

using namespace mindhash;
using namespace mindhash::schemes;
using nlohmann::json;

namespace {

// Runs a scheme over a ScriptedSource, answering each prompt with `respond`.
PasswordOutput drive(SchemeId id, std::string_view website,
                     const std::function<json(const memory::Prompt&)>& respond,
                     const CharBox& box = box_for_user(1)) {
  memory::ScriptedSource source;
  SchemeContext context;
  context.box = box;
  for (int guard = 0; guard < 100; ++guard) {
    try {
      return run_scheme(id, source, website, context);
    } catch (const memory::PendingQuery& q) {
      source.answer(q.prompt(), respond(q.prompt()));
    }
  }
  FAIL("scheme never finished");
  return {};
}

PasswordOutput simulate(SchemeId id, std::uint64_t seed, std::string_view website) {
  const memory::MemoryModel model(seed);
  SchemeContext context;
  context.box = box_for_user(seed);
  return run_scheme(id, model, website, context);
}

}  // namespace

TEST_SUITE("schemes") {
  TEST_CASE("group sum") {
    CHECK(group_sum("whitebirds", 'x') == "ecgaw");
    CHECK(group_sum("abc", 'a') == "cd");       // odd length takes the favourite letter
    CHECK(group_sum("zz", 'a') == "z");         // 26 + 26 wraps to 26
    CHECK(group_sum("a b", 'a') == "c");        // spaces ignored
    CHECK(group_sum("ab", 'a', 0) == "b");      // a=0, b=1
    CHECK_THROWS_AS(group_sum("", 'a'), Error);
  }

  TEST_CASE("letter values") {
    const LetterValueMap one(1), zero(0);
    CHECK(one.value('a') == 1);
    CHECK(one.value('z') == 26);
    CHECK(zero.value('a') == 0);
    CHECK(zero.letter(25) == 'z');
  }

  TEST_CASE("memory palace worked example") {
    const keyboard::DiagonalPolicy policy{keyboard::Side::Left, 1, false};
    CHECK(memory_palace_password("whitebirds", 'x', policy, 1) == "e4cdgtaqw3");
  }

  TEST_CASE("scripted memory palace session") {
    const auto out = drive(SchemeId::MemoryPalace, "gmail", [](const memory::Prompt& p) -> json {
      if (p.kind == "direction-walk") return "white birds";
      if (p.kind == "letter") return "x";
      if (p.kind == "diagonal-policy") return {{"side", "left"}, {"rows_up", 1}, {"use_shifted", false}};
      if (p.kind == "indexing-base") return 1;
      FAIL("unexpected prompt " << p.kind);
      return nullptr;
    });
    CHECK(out.password == "e4cdgtaqw3");
    CHECK(replay(out) == out.password);
  }

  TEST_CASE("scrambled box coordinates") {
    const std::vector<BlockPosition> expected = {{1, 9}, {8, 0}, {9, 0}, {1, 8}, {2, 0}};
    CHECK(box_coordinates("shirt", 1) == expected);
    CHECK(box_coordinates("a", 0) == std::vector<BlockPosition>{{0, 0}});
    CHECK(box_coordinates("z", 1) == std::vector<BlockPosition>{{2, 6}});
  }

  TEST_CASE("block moves") {
    CHECK(move_destination(StoryElementKind::Sad, {5, 5}, 1) == BlockPosition{4, 5});
    CHECK(move_destination(StoryElementKind::Happy, {1, 2}, 3) == BlockPosition{6, 5});
    CHECK(move_destination(StoryElementKind::ForwardEvent, {0, 8}, 2) == BlockPosition{0, 0});
    CHECK(move_destination(StoryElementKind::MemorableCharacter, {9, 9}, 1) == BlockPosition{0, 0});
  }

  TEST_CASE("scrambling is undone by unscrambling") {
    const auto box = box_for_user(42);
    const std::array<StoryElement, 4> elements = {
        StoryElement{StoryElementKind::Sad, 1}, StoryElement{StoryElementKind::Happy, 2},
        StoryElement{StoryElementKind::ForwardEvent, 3},
        StoryElement{StoryElementKind::MemorableCharacter, 4}};
    const std::array<BlockPosition, 4> choices = {BlockPosition{5, 5}, BlockPosition{0, 0},
                                                  BlockPosition{7, 7}, BlockPosition{3, 2}};
    const auto result = scramble(box, elements, choices);
    CHECK(result.swaps.size() == 4);
    CHECK(unscramble(result.sbox, result.swaps) == box);
    std::multiset<char> before, after;
    for (const auto& row : box) before.insert(row.begin(), row.end());
    for (const auto& row : result.sbox) after.insert(row.begin(), row.end());
    CHECK(before == after);
  }

  TEST_CASE("blocks must fit") {
    const auto box = box_for_user(1);
    const std::array<StoryElement, 4> elements = {
        StoryElement{StoryElementKind::Sad, 1}, StoryElement{StoryElementKind::Sad, 2},
        StoryElement{StoryElementKind::Sad, 3}, StoryElement{StoryElementKind::Sad, 4}};
    const std::array<BlockPosition, 4> bad = {BlockPosition{0, 0}, BlockPosition{0, 0},
                                              BlockPosition{0, 0}, BlockPosition{7, 0}};
    CHECK_THROWS_AS(scramble(box, elements, bad), Error);
  }

  TEST_CASE("box contents") {
    const auto box = build_box(5);
    int letters = 0, digits = 0, other = 0;
    for (const auto& row : box) {
      for (char c : row) {
        if (std::isalpha(static_cast<unsigned char>(c))) ++letters;
        else if (std::isdigit(static_cast<unsigned char>(c))) ++digits;
        else ++other;
        CHECK(c > 0x20);
        CHECK(c < 0x7f);
      }
    }
    CHECK(letters > 0);
    CHECK(digits > 0);
    CHECK(other > 0);
    CHECK(build_box(5) == box);
    CHECK(build_box(6) != box);
  }

  TEST_CASE("mnemonic") {
    CHECK(mnemonic("flipkart") == "fpkt");
    CHECK(mnemonic("gmail") == "gail");
    CHECK(mnemonic("ab") == "abbb");
    CHECK(mnemonic("a") == "aaaa");
  }

  TEST_CASE("special insertion, shifting and dropping") {
    const Tiebreak first = [](char, std::span<const char> c) { return c.front(); };
    CHECK(insert_specials("hello", first) == "he#llo(");
    CHECK(move_to_end("abcdef", {4, 0, 2}) == "bdface");
    CHECK_THROWS_AS(move_to_end("abcdef", {1, 1, 2}), Error);
    CHECK_THROWS_AS(move_to_end("abc", {0, 1, 3}), Error);
    CHECK(drop_odd_positions("abcdef") == "bdf");
    CHECK(drop_odd_positions("abcde") == "bd");
    CHECK(drop_odd_positions("a").empty());
  }

  TEST_CASE("scripted song session") {
    const auto out = drive(SchemeId::Song, "flipkart", [](const memory::Prompt& p) -> json {
      if (p.kind == "pin") return "1230";
      if (p.kind == "song-choice") return {"one", "two", "three", "four"};
      if (p.kind == "song-words") return "love";
      if (p.kind == "tiebreak-choice") return p.payload.at("candidates").back();
      if (p.kind == "shift-group") return {0, 1, 2};
      FAIL("unexpected prompt " << p.kind);
      return nullptr;
    });
    // "lovelovelovelove" gains a special after each vowel (o -> ')' by choice,
    // e -> '$'), then two shifts of the first three characters.
    CHECK(out.at("song_string") == "lovelovelovelove");
    CHECK(out.at("with_specials").get<std::string>().size() == 24);
    CHECK(out.password.size() == 12);
    CHECK(replay(out) == out.password);
  }

  TEST_CASE("internal sentence checks its ingredients") {
    const auto ok = drive(SchemeId::InternalSentence, "gmail", [](const memory::Prompt& p) -> json {
      if (p.kind == "free-word") return "petrichor";
      return "my gmail smells of petrichor";
    });
    CHECK(ok.password == "my gmail smells of petrichor");
    CHECK_THROWS_AS(drive(SchemeId::InternalSentence, "gmail",
                          [](const memory::Prompt& p) -> json {
                            if (p.kind == "free-word") return "petrichor";
                            return "nothing relevant";
                          }),
                    Error);
  }

  TEST_CASE("every scheme replays from its trace and from recorded answers") {
    for (auto id : kAllSchemes) {
      for (std::uint64_t seed = 0; seed < 20; ++seed) {
        for (const std::string site : {"gmail", "flipkart", "x"}) {
          const memory::MemoryModel model(seed);
          memory::RecordingSource recorder(model);
          SchemeContext context;
          context.box = box_for_user(seed);
          const auto out = run_scheme(id, recorder, site, context);
          CAPTURE(to_string(id));
          CAPTURE(seed);
          CAPTURE(site);
          CHECK(replay(out) == out.password);
          const memory::ScriptedSource script(recorder.answers());
          CHECK(run_scheme(id, script, site, context).password == out.password);
          CHECK(PasswordOutput::from_json(out.to_json()).password == out.password);
        }
      }
    }
  }

  TEST_CASE("scheme ids") {
    for (auto id : kAllSchemes) CHECK(scheme_from_string(to_string(id)) == id);
    CHECK_THROWS_AS(scheme_from_string("cue-pin-select"), Error);
  }

  TEST_CASE("simulated users differ from each other") {
    std::set<std::string> seen;
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      seen.insert(simulate(SchemeId::MemoryPalace, seed, "gmail").password);
    }
    CHECK(seen.size() >= 28);
  }

  TEST_CASE("empty websites are rejected") {
    CHECK_THROWS_AS(simulate(SchemeId::MemoryPalace, 1, "123"), Error);
  }
}
