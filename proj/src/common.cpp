#include "adsyn/common.hpp"

namespace adsyn {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Syntax: return "syntax error";
    case ErrorKind::UndeclaredProposition: return "undeclared proposition";
    case ErrorKind::UnsupportedFragment: return "unsupported fragment";
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::NonTotal: return "non-total transition function";
    case ErrorKind::DanglingState: return "dangling state reference";
    case ErrorKind::InvalidModel: return "invalid model";
    case ErrorKind::NotObservationPreserving: return "partition not observation preserving";
    case ErrorKind::EmptyEstimate: return "empty parameter estimate";
    case ErrorKind::AlphabetMismatch: return "alphabet mismatch";
    case ErrorKind::NotWinning: return "state outside winning region";
    case ErrorKind::WinningRegionExit: return "winning region exit";
    case ErrorKind::InvalidArgument: return "invalid argument";
  }
  return "error";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

SyntaxError::SyntaxError(const std::string& message, std::size_t position)
    : Error(ErrorKind::Syntax, message + " (at " + std::to_string(position) + ")"),
      position_(position) {}

ParamSet ParamSet::full(std::size_t num_params) {
  if (num_params > kMaxParams) {
    throw Error(ErrorKind::InvalidModel,
                "at most " + std::to_string(kMaxParams) + " parameters are supported");
  }
  return ParamSet(num_params == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << num_params) - 1);
}

std::vector<ParamId> ParamSet::ids() const {
  std::vector<ParamId> out;
  out.reserve(size());
  for (std::uint64_t b = bits_; b != 0; b &= b - 1) {
    out.push_back(static_cast<ParamId>(std::countr_zero(b)));
  }
  return out;
}

std::string join_braced(const std::vector<std::string>& items, const char* sep) {
  std::string out = "{";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  out += "}";
  return out;
}

}  // namespace adsyn
