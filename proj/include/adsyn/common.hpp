#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace adsyn {

using StateId = std::uint32_t;
using InputId = std::uint32_t;
using ParamId = std::uint32_t;

// A letter of the alphabet 2^Π, as a bitset over the declared proposition order.
using Letter = std::uint64_t;

enum class ErrorKind {
  Syntax,
  UndeclaredProposition,
  UnsupportedFragment,
  Parse,
  NonTotal,
  DanglingState,
  InvalidModel,
  NotObservationPreserving,
  EmptyEstimate,
  AlphabetMismatch,
  NotWinning,
  WinningRegionExit,
  InvalidArgument,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

/// Syntax error in textual input; `position` is a 0-based byte offset
/// (LTL text) or a 1-based line number (file formats).
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, std::size_t position);

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

inline constexpr std::size_t kMaxParams = 64;

/// Non-empty-by-convention subset of the parameter set Θ, stored as a bitset
/// over parameter ids.
class ParamSet {
 public:
  constexpr ParamSet() = default;
  constexpr explicit ParamSet(std::uint64_t bits) : bits_(bits) {}

  static ParamSet full(std::size_t num_params);
  static constexpr ParamSet single(ParamId p) { return ParamSet(std::uint64_t{1} << p); }

  constexpr bool contains(ParamId p) const { return (bits_ >> p) & 1U; }
  constexpr void insert(ParamId p) { bits_ |= std::uint64_t{1} << p; }
  constexpr void erase(ParamId p) { bits_ &= ~(std::uint64_t{1} << p); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr bool subset_of(ParamSet other) const { return (bits_ & ~other.bits_) == 0; }
  constexpr std::uint64_t bits() const { return bits_; }

  std::vector<ParamId> ids() const;

  friend constexpr bool operator==(ParamSet, ParamSet) = default;
  friend constexpr auto operator<=>(ParamSet, ParamSet) = default;

 private:
  std::uint64_t bits_ = 0;
};

/// Renders {a,b,c} from a list of names; used for DOT labels and diagnostics.
std::string join_braced(const std::vector<std::string>& items, const char* sep = ",");

}  // namespace adsyn
