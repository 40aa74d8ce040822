#ifndef NBMF_CORE_ERROR_HPP
#define NBMF_CORE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace nbmf {

enum class ErrorCode {
  InvalidArgument,
  Dimension,   // shapes do not conform
  Domain,      // values outside the allowed set (negative, NaN, out of range)
  Io,          // file read/write/parse failures
  Capacity,    // problem size over a hard cap
  Numeric,     // non-finite values encountered during computation
  Config,      // inconsistent or missing configuration
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) throw Error(code, what);
}

}  // namespace nbmf

#endif
