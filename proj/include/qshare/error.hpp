#pragma once

#include <stdexcept>
#include <string>

namespace qshare {

enum class Errc {
  not_hermitian,
  no_convergence,
  not_psd,
  wrong_dimension,
  length_mismatch,
  not_normalized,
  zero_vector,
  too_large,
  not_unitary,
  bad_party_index,
  same_party,
  bad_distribution,
  monogamy_violation,
  out_of_range,
  overflow,
  degenerate_slice,
  bad_input,
  internal,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::not_hermitian: return "NotHermitian";
    case Errc::no_convergence: return "NoConvergence";
    case Errc::not_psd: return "NotPSD";
    case Errc::wrong_dimension: return "WrongDimension";
    case Errc::length_mismatch: return "LengthMismatch";
    case Errc::not_normalized: return "NotNormalized";
    case Errc::zero_vector: return "ZeroVector";
    case Errc::too_large: return "TooLarge";
    case Errc::not_unitary: return "NotUnitary";
    case Errc::bad_party_index: return "BadPartyIndex";
    case Errc::same_party: return "SameParty";
    case Errc::bad_distribution: return "BadDistribution";
    case Errc::monogamy_violation: return "MonogamyViolation";
    case Errc::out_of_range: return "OutOfRange";
    case Errc::overflow: return "Overflow";
    case Errc::degenerate_slice: return "DegenerateSlice";
    case Errc::bad_input: return "BadInput";
    case Errc::internal: return "InternalError";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

inline void require(bool ok, Errc code, const std::string& msg) {
  if (!ok) fail(code, msg);
}

} // namespace qshare
