// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mindhash {

enum class ErrorKind {
  UnmappedCharacter,
  NoRowAbove,
  NoDiagonalKey,
  LayoutParse,
  Config,
  EmptyWebsite,
  EmptySubkey,
  BlockRange,
  SongTooShort,
  EmptyPassword,
  NonPrintable,
  UndefinedMetric,
  InvalidPair,
  InvalidPriming,
  EmptyCorpus,
  Corpus,
  Parse,
  Schema,
  Lexicon,
  PendingAnswer,
  Validation,
  NotFound,
  Expired,
  Conflict,
};

std::string_view to_string(ErrorKind kind);

/// Single exception type for the library; callers branch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace mindhash
