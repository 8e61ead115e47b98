#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dyck {

// ---------------------------------------------------------------------------
// Errors. The CLI maps these to exit codes: parse 2, size cap 3, internal 4.
// ---------------------------------------------------------------------------

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t position)
      : Error(msg), position(position) {}
  std::size_t position;  // 1-based
};

class SizeCapError : public Error {
 public:
  SizeCapError(const std::string& msg, std::size_t n, std::size_t cap)
      : Error(msg), n(n), cap(cap) {}
  std::size_t n;
  std::size_t cap;
};

class InternalError : public Error {
 public:
  using Error::Error;
};

// Caller misuse: wrong alphabet, mixed polarity, bad parameters, out-of-range
// script indices.
class UsageError : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Symbols and strings
// ---------------------------------------------------------------------------

enum class Polarity : std::uint8_t { open, close };

struct ParenSymbol {
  std::uint32_t type_id = 0;
  Polarity polarity = Polarity::open;

  bool is_open() const { return polarity == Polarity::open; }
  friend bool operator==(const ParenSymbol&, const ParenSymbol&) = default;
};

inline ParenSymbol open_paren(std::uint32_t type_id) {
  return {type_id, Polarity::open};
}
inline ParenSymbol close_paren(std::uint32_t type_id) {
  return {type_id, Polarity::close};
}

// The matching opposite-polarity symbol of the same type.
inline ParenSymbol congruent(ParenSymbol x) {
  x.polarity = x.is_open() ? Polarity::close : Polarity::open;
  return x;
}

struct ParenString {
  std::vector<ParenSymbol> symbols;
  std::uint32_t alphabet_size = 1;
  // Non-empty when the string came from the token format; used for rendering.
  std::vector<std::string> type_names;

  std::size_t size() const { return symbols.size(); }
  bool empty() const { return symbols.empty(); }
  const ParenSymbol& operator[](std::size_t i) const { return symbols[i]; }
};

enum class Format : std::uint8_t { compact, tokens };

// ---------------------------------------------------------------------------
// Parsing / rendering
//
// Compact format: "([{<" open and ")]}>" close, type ids 0-3, whitespace
// ignored. Token format: whitespace-separated, `name` opens and `/name`
// closes; names are interned in first-appearance order.
// ---------------------------------------------------------------------------

inline constexpr std::string_view kOpenChars = "([{<";
inline constexpr std::string_view kCloseChars = ")]}>";

namespace detail {

inline void check_alphabet(std::uint32_t max_type_seen, bool any,
                           std::optional<std::uint32_t> declared,
                           std::uint32_t& out) {
  std::uint32_t inferred = any ? max_type_seen + 1 : 1;
  if (declared) {
    if (*declared == 0) throw UsageError("alphabet size must be >= 1");
    if (inferred > *declared)
      throw ParseError("symbol type exceeds declared alphabet size", 0);
    out = *declared;
  } else {
    out = inferred;
  }
}

}  // namespace detail

inline ParenString parse_compact(std::string_view text,
                                 std::optional<std::uint32_t> alphabet = {}) {
  ParenString result;
  std::uint32_t max_type = 0;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
        c == '\v')
      continue;
    std::size_t o = kOpenChars.find(c);
    if (o != std::string_view::npos) {
      result.symbols.push_back(open_paren(static_cast<std::uint32_t>(o)));
    } else {
      std::size_t cl = kCloseChars.find(c);
      if (cl == std::string_view::npos)
        throw ParseError("unknown character '" + std::string(1, c) + "'",
                         i + 1);
      result.symbols.push_back(close_paren(static_cast<std::uint32_t>(cl)));
    }
    max_type = std::max(max_type, result.symbols.back().type_id);
    any = true;
  }
  detail::check_alphabet(max_type, any, alphabet, result.alphabet_size);
  return result;
}

inline ParenString parse_tokens(std::string_view text,
                                std::optional<std::uint32_t> alphabet = {}) {
  ParenString result;
  std::size_t i = 0;
  std::size_t token_no = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
      ++i;
    if (i >= text.size()) break;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])))
      ++j;
    std::string_view tok = text.substr(i, j - i);
    ++token_no;
    i = j;

    Polarity pol = Polarity::open;
    if (tok.front() == '/') {
      pol = Polarity::close;
      tok.remove_prefix(1);
      if (tok.empty()) throw ParseError("empty type name after '/'", token_no);
    }
    auto it = std::find(result.type_names.begin(), result.type_names.end(),
                        std::string(tok));
    std::uint32_t id;
    if (it == result.type_names.end()) {
      id = static_cast<std::uint32_t>(result.type_names.size());
      result.type_names.emplace_back(tok);
    } else {
      id = static_cast<std::uint32_t>(it - result.type_names.begin());
    }
    result.symbols.push_back({id, pol});
  }
  std::uint32_t max_type =
      result.type_names.empty()
          ? 0
          : static_cast<std::uint32_t>(result.type_names.size()) - 1;
  detail::check_alphabet(max_type, !result.symbols.empty(), alphabet,
                         result.alphabet_size);
  while (result.type_names.size() < result.alphabet_size)
    result.type_names.push_back("t" + std::to_string(result.type_names.size()));
  return result;
}

inline std::string render_symbol(const ParenString& context, ParenSymbol s,
                                 Format format) {
  if (format == Format::compact) {
    if (s.type_id >= 4)
      throw UsageError("compact format supports at most 4 parenthesis types");
    return std::string(
        1, s.is_open() ? kOpenChars[s.type_id] : kCloseChars[s.type_id]);
  }
  std::string name = s.type_id < context.type_names.size()
                         ? context.type_names[s.type_id]
                         : "t" + std::to_string(s.type_id);
  return s.is_open() ? name : "/" + name;
}

inline std::string render(const ParenString& p, Format format) {
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (format == Format::tokens && i > 0) out += ' ';
    out += render_symbol(p, p[i], format);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Membership and the Dyck(1) special case
// ---------------------------------------------------------------------------

inline bool is_well_formed(const ParenString& p) {
  std::vector<std::uint32_t> stack;
  for (const ParenSymbol& s : p.symbols) {
    if (s.is_open()) {
      stack.push_back(s.type_id);
    } else {
      if (stack.empty() || stack.back() != s.type_id) return false;
      stack.pop_back();
    }
  }
  return stack.empty();
}

// Single pass: unmatched closes plus unmatched opens. For one parenthesis
// type this equals the exact edit distance.
inline std::size_t dyck1_distance(const ParenString& p) {
  if (p.alphabet_size != 1)
    throw UsageError("dyck1_distance requires alphabet size 1");
  std::size_t depth = 0, unmatched_closes = 0;
  for (const ParenSymbol& s : p.symbols) {
    if (s.is_open()) {
      ++depth;
    } else if (depth > 0) {
      --depth;
    } else {
      ++unmatched_closes;
    }
  }
  return unmatched_closes + depth;
}

// ---------------------------------------------------------------------------
// Edit scripts. Indices are 1-based positions in the original string; an
// insertion is anchored after original position `index` (0 inserts at the
// front). Application order is substitute, delete, insert, so the result does
// not depend on the order ops are listed in.
// ---------------------------------------------------------------------------

struct EditOp {
  enum class Kind : std::uint8_t { del, substitute, insert };
  Kind kind;
  std::size_t index = 0;
  ParenSymbol symbol{};

  friend bool operator==(const EditOp&, const EditOp&) = default;
};

struct EditScript {
  std::vector<EditOp> ops;
  std::size_t cost() const { return ops.size(); }
};

inline EditOp delete_op(std::size_t index) {
  return {EditOp::Kind::del, index, {}};
}
inline EditOp substitute_op(std::size_t index, ParenSymbol s) {
  return {EditOp::Kind::substitute, index, s};
}
inline EditOp insert_op(std::size_t after_index, ParenSymbol s) {
  return {EditOp::Kind::insert, after_index, s};
}

inline ParenString apply_script(const ParenString& p, const EditScript& script) {
  const std::size_t n = p.size();
  std::vector<char> deleted(n, 0);
  std::vector<std::optional<ParenSymbol>> substituted(n);
  std::vector<std::vector<ParenSymbol>> inserted(n + 1);

  for (const EditOp& op : script.ops) {
    switch (op.kind) {
      case EditOp::Kind::del:
        if (op.index < 1 || op.index > n)
          throw UsageError("delete index out of range");
        if (substituted[op.index - 1])
          throw UsageError("delete and substitute target the same index");
        deleted[op.index - 1] = 1;
        break;
      case EditOp::Kind::substitute:
        if (op.index < 1 || op.index > n)
          throw UsageError("substitute index out of range");
        if (deleted[op.index - 1])
          throw UsageError("delete and substitute target the same index");
        substituted[op.index - 1] = op.symbol;
        break;
      case EditOp::Kind::insert:
        if (op.index > n) throw UsageError("insert anchor out of range");
        inserted[op.index].push_back(op.symbol);
        break;
    }
  }

  ParenString out;
  out.alphabet_size = p.alphabet_size;
  out.type_names = p.type_names;
  auto push = [&](ParenSymbol s) {
    out.symbols.push_back(s);
    if (s.type_id >= out.alphabet_size) out.alphabet_size = s.type_id + 1;
  };
  for (ParenSymbol s : inserted[0]) push(s);
  for (std::size_t i = 0; i < n; ++i) {
    if (!deleted[i]) push(substituted[i] ? *substituted[i] : p[i]);
    for (ParenSymbol s : inserted[i + 1]) push(s);
  }
  return out;
}

struct RepairResult {
  std::size_t cost = 0;
  EditScript script;
  ParenString repaired;
};

}  // namespace dyck
