// SPDX-License-Identifier: Apache-2.0
#include "mindhash/error.hpp"

namespace mindhash {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnmappedCharacter: return "UnmappedCharacter";
    case ErrorKind::NoRowAbove: return "NoRowAbove";
    case ErrorKind::NoDiagonalKey: return "NoDiagonalKey";
    case ErrorKind::LayoutParse: return "LayoutParseError";
    case ErrorKind::Config: return "ConfigError";
    case ErrorKind::EmptyWebsite: return "EmptyWebsite";
    case ErrorKind::EmptySubkey: return "EmptySubkey";
    case ErrorKind::BlockRange: return "BlockRangeError";
    case ErrorKind::SongTooShort: return "SongTooShort";
    case ErrorKind::EmptyPassword: return "EmptyPassword";
    case ErrorKind::NonPrintable: return "NonPrintable";
    case ErrorKind::UndefinedMetric: return "UndefinedMetric";
    case ErrorKind::InvalidPair: return "InvalidPair";
    case ErrorKind::InvalidPriming: return "InvalidPriming";
    case ErrorKind::EmptyCorpus: return "EmptyCorpus";
    case ErrorKind::Corpus: return "CorpusError";
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::Schema: return "SchemaError";
    case ErrorKind::Lexicon: return "LexiconError";
    case ErrorKind::PendingAnswer: return "PendingAnswer";
    case ErrorKind::Validation: return "ValidationError";
    case ErrorKind::NotFound: return "NotFound";
    case ErrorKind::Expired: return "Expired";
    case ErrorKind::Conflict: return "Conflict";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message),
      kind_(kind) {}

}  // namespace mindhash
