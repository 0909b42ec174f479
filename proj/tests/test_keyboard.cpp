// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "mindhash/error.hpp"
#include "mindhash/keyboard.hpp"

using namespace mindhash;
using namespace mindhash::keyboard;

namespace {

std::set<char> first_group(char c) {
  const auto groups = KeyboardLayout::qwerty().nearest_specials(c);
  REQUIRE_FALSE(groups.empty());
  return {groups.front().begin(), groups.front().end()};
}

}  // namespace

TEST_SUITE("keyboard") {
  TEST_CASE("stagger geometry") {
    const auto& kb = KeyboardLayout::qwerty();
    CHECK(kb.locate('1').x == doctest::Approx(1.0));
    CHECK(kb.locate('q').x == doctest::Approx(1.5));
    CHECK(kb.locate('a').x == doctest::Approx(1.75));
    CHECK(kb.locate('z').x == doctest::Approx(2.25));
    CHECK(kb.locate('Q').base == 'q');
    CHECK(kb.locate('!').base == '1');
    CHECK(kb.locate('z').row == 3);
  }

  TEST_CASE("unmapped characters are reported") {
    CHECK_THROWS_AS(KeyboardLayout::qwerty().locate('\t'), Error);
    CHECK_FALSE(KeyboardLayout::qwerty().find(' ').has_value());
  }

  TEST_CASE("nearest special ties") {
    CHECK(first_group('o') == std::set<char>{'(', ')'});
    CHECK(first_group('e') == std::set<char>{'$', '#'});
    CHECK(first_group('a') == std::set<char>{'@'});
    CHECK(first_group('i') == std::set<char>{'*', '('});
    CHECK(first_group('u') == std::set<char>{'&', '*'});
  }

  TEST_CASE("nearest special groups are sorted by distance") {
    const auto& kb = KeyboardLayout::qwerty();
    for (char c : std::string("abcdefghijklmnopqrstuvwxyz")) {
      const auto groups = kb.nearest_specials(c);
      const auto from = kb.locate(c);
      double last = -1.0;
      std::size_t total = 0;
      for (const auto& group : groups) {
        for (char s : group) {
          const auto to = kb.locate(s);
          const double d = std::hypot(to.x - from.x, to.y - from.y);
          CHECK(d >= last - 1e-12);
          last = std::max(last, d);
        }
        total += group.size();
      }
      CHECK(total == kb.specials().size());
    }
  }

  TEST_CASE("diagonal neighbours") {
    const auto& kb = KeyboardLayout::qwerty();
    const DiagonalPolicy unshifted{Side::Left, 1, false};
    CHECK(kb.diagonal_neighbor('e', Side::Right, unshifted) == '4');
    CHECK(kb.diagonal_neighbor('e', Side::Left, unshifted) == '3');
    CHECK(kb.diagonal_neighbor('c', Side::Left, unshifted) == 'd');
    CHECK(kb.diagonal_neighbor('g', Side::Left, unshifted) == 't');
    CHECK(kb.diagonal_neighbor('a', Side::Left, unshifted) == 'q');
    CHECK(kb.diagonal_neighbor('w', Side::Right, unshifted) == '3');
    const DiagonalPolicy shifted{Side::Left, 1, true};
    CHECK(kb.diagonal_neighbor('e', Side::Right, shifted) == '$');
    const DiagonalPolicy two_up{Side::Left, 2, false};
    CHECK(kb.diagonal_neighbor('c', Side::Left, two_up) == 'e');
    CHECK_THROWS_AS(kb.diagonal_neighbor('5', Side::Left, unshifted), Error);
  }

  TEST_CASE("layout text round trips") {
    const auto& kb = KeyboardLayout::qwerty();
    const auto again = KeyboardLayout::parse(kb.serialize());
    CHECK(again.serialize() == kb.serialize());
    for (char c = 0x21; c < 0x7f; ++c) {
      const auto a = kb.find(c);
      const auto b = again.find(c);
      REQUIRE(a.has_value() == b.has_value());
      if (a) CHECK(a->x == doctest::Approx(b->x));
    }
  }

  TEST_CASE("layout file on disk matches the embedded copy") {
    const auto disk = KeyboardLayout::load(std::string(MINDHASH_SOURCE_DIR) + "/data/layouts/us_qwerty.txt");
    CHECK(disk.serialize() == KeyboardLayout::qwerty().serialize());
  }

  TEST_CASE("malformed layouts are rejected") {
    CHECK_THROWS_AS(KeyboardLayout::parse("top x 1 qQ"), Error);
    CHECK_THROWS_AS(KeyboardLayout::parse("top 0.5 1 qQ qQ"), Error);
  }
}
