#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "nsb/admission/instance.h"

namespace nsb::admission {

// Text layout, one keyword per line, '#' starts a comment:
//
//   I 3
//   J 2
//   r 100 100 100
//   pi 10 20 30        (J rows, in request order)
//   theta 5 5 5        (J rows, in request order)
//
// μ is always derived from the theta rows.
class InstanceFormatError : public std::runtime_error {
 public:
  InstanceFormatError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

AdmissionInstance read_instance(std::istream& in);
void write_instance(std::ostream& out, const AdmissionInstance& inst);

}  // namespace nsb::admission
