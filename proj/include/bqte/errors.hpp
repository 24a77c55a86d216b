#ifndef BQTE_ERRORS_HPP
#define BQTE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bqte {

// Error categories map onto the CLI exit codes:
//   DataError   -> 1  (unreadable files, malformed rows, empty groups)
//   ConfigError -> 2  (invalid option values, malformed scenario files)
//   RangeError  -> 3  (quantile levels, validity-range and other numeric
//                      domain violations)

class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

class RangeError : public std::runtime_error {
 public:
  explicit RangeError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bqte

#endif  // BQTE_ERRORS_HPP
