#ifndef PK_ERRORS_HH
#define PK_ERRORS_HH

#include <stdexcept>
#include <string>

namespace pk {

/* parse_error -> CLI exit 2; the others -> CLI exit 3. */
struct parse_error : std::runtime_error {
  explicit parse_error(const std::string& m) : std::runtime_error(m) {}
};

struct domain_error : std::runtime_error {
  explicit domain_error(const std::string& m) : std::runtime_error(m) {}
};

/* Raised by desk-scale guards (input too large for the intended regime). */
struct resource_error : domain_error {
  explicit resource_error(const std::string& m) : domain_error(m) {}
};

}  // namespace pk

#endif
