#pragma once

#include <stdexcept>
#include <string>

namespace npi {

/// Base for every data/validation failure raised by the library. The CLI maps
/// these to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define NPI_DEFINE_ERROR(Name)                    \
  class Name : public Error {                     \
   public:                                        \
    explicit Name(const std::string& what)        \
        : Error(std::string(#Name ": ") + what) {} \
  }

NPI_DEFINE_ERROR(InvalidState);
NPI_DEFINE_ERROR(WeightError);
NPI_DEFINE_ERROR(RangeError);
NPI_DEFINE_ERROR(NegativeProbability);
NPI_DEFINE_ERROR(UnsupportedState);
NPI_DEFINE_ERROR(InvalidTable);
NPI_DEFINE_ERROR(ZeroDenominator);
NPI_DEFINE_ERROR(ConfigurationError);
NPI_DEFINE_ERROR(ConfigError);
NPI_DEFINE_ERROR(UnsortedStream);
NPI_DEFINE_ERROR(AlreadyCorrected);
NPI_DEFINE_ERROR(PipelineOrderError);
NPI_DEFINE_ERROR(EmptyChannel);
NPI_DEFINE_ERROR(InvalidCalibration);
NPI_DEFINE_ERROR(FormatError);

#undef NPI_DEFINE_ERROR

}  // namespace npi
