#include <cvlab/errors.hpp>

#include <sstream>
#include <string>
#include <utility>

namespace cvlab {

namespace {

std::string format_parse_error(std::size_t offset,
                               const std::vector<std::string>& expected,
                               const std::string& found) {
  std::ostringstream os;
  os << "parse error at offset " << offset << ": expected ";
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (i) os << (i + 1 == expected.size() ? " or " : ", ");
    os << expected[i];
  }
  os << ", found " << found;
  return os.str();
}

}  // namespace

ParseError::ParseError(std::size_t offset, std::vector<std::string> expected,
                       const std::string& found)
    : Error(format_parse_error(offset, expected, found)),
      offset_(offset),
      expected_(std::move(expected)) {}

UnknownIdentifier::UnknownIdentifier(std::size_t offset, std::string name)
    : Error("unknown identifier '" + name + "' at offset " +
            std::to_string(offset)),
      offset_(offset),
      name_(std::move(name)) {}

NotMonotone::NotMonotone(double h, double increase, double allowed)
    : Error("sequence not monotone: increases by " + std::to_string(increase) +
            " at h = " + std::to_string(h) + " (allowed " +
            std::to_string(allowed) + ")"),
      h_(h),
      increase_(increase) {}

NonPositiveMu::NonPositiveMu(double h, double value)
    : ModelInvalid("mu(h) = " + std::to_string(value) +
                   " is not positive at h = " + std::to_string(h)) {}

}  // namespace cvlab
