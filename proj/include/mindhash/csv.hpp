// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace mindhash::csv {

using Row = std::vector<std::string>;

/// RFC 4180: quoted fields may contain commas, newlines and doubled quotes.
/// Throws ParseError on an unterminated quote.
std::vector<Row> parse(std::string_view text);

std::string escape(std::string_view field);
std::string format_row(const Row& row);

}  // namespace mindhash::csv
