#include "quditfid/error.hpp"

#include <cstdio>

namespace qfid {
namespace {

std::string fmt_double(const char* prefix, double value) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "%s%.6g", prefix, value);
  return buf;
}

}  // namespace

DimensionMismatch::DimensionMismatch(std::size_t lhs, std::size_t rhs)
    : Error("dimension mismatch: " + std::to_string(lhs) + " vs " + std::to_string(rhs)) {}

NotHermitian::NotHermitian(double deviation)
    : Error(fmt_double("matrix is not Hermitian: max deviation ", deviation)), deviation_(deviation) {}

NotPositive::NotPositive(double min_eigenvalue)
    : Error(fmt_double("not positive semidefinite: eigenvalue ", min_eigenvalue)),
      min_eigenvalue_(min_eigenvalue) {}

TraceError::TraceError(double trace)
    : Error(fmt_double("trace is not 1: trace ", trace)), trace_(trace) {}

NotUnitary::NotUnitary(double deviation)
    : Error(fmt_double("matrix is not unitary: max |U^dagger U - I| ", deviation)), deviation_(deviation) {}

}  // namespace qfid
