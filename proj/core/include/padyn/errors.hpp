#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace padyn {

// Failure taxonomy. Everything a caller might want to branch on is a typed
// subclass; the CLI maps any padyn::error to exit status 2 (certified
// mathematical failure) as opposed to usage errors (status 1).
enum class errc {
  precision,      // outcome depends on digits beyond the known precision
  math_domain,    // no solution in Q_p, wrong prime, escape criterion fails
  certification,  // a hypothesis check failed (not in S, lambda <= 1, r > mu, ...)
};

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

// Result indistinguishable from zero, undecidable comparison, digit budget
// exhausted. Never reported as a silent zero.
class precision_error : public error {
 public:
  explicit precision_error(const std::string& msg) : error(errc::precision, msg) {}
};

// The requested object does not exist over Q_p (non-residue square root,
// odd valuation, root in a proper extension, p | d, no escape, ...).
class math_domain_error : public error {
 public:
  explicit math_domain_error(const std::string& msg) : error(errc::math_domain, msg) {}
};

// A certificate could not be established. Messages carry the violated
// inequality with both sides as value-group exponents.
class certification_error : public error {
 public:
  explicit certification_error(const std::string& msg) : error(errc::certification, msg) {}
};

// A forward orbit left the certified region; carries the offending step so
// callers can distinguish "escaped at step k" from precision exhaustion.
class orbit_escape_error : public math_domain_error {
 public:
  orbit_escape_error(const std::string& msg, int64_t step)
      : math_domain_error(msg), step_(step) {}
  int64_t step() const noexcept { return step_; }

 private:
  int64_t step_;
};

}  // namespace padyn
