#pragma once

#include <stdexcept>
#include <string>

namespace planar {

// Buckets map to process exit codes in the CLI: usage = 1, data = 2,
// algorithmic = 3.
enum class ErrorKind { Usage, Data, Algorithmic };

struct Error : std::runtime_error {
  ErrorKind kind;
  Error(ErrorKind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

struct UsageError : Error {
  explicit UsageError(const std::string& m) : Error(ErrorKind::Usage, m) {}
};

// geometry
struct DegenerateHull : Error {
  explicit DegenerateHull(const std::string& m) : Error(ErrorKind::Algorithmic, m) {}
};

// discrepancy counting
struct UnregisteredLine : Error {
  explicit UnregisteredLine(const std::string& m) : Error(ErrorKind::Algorithmic, m) {}
};
struct EmptySample : Error {
  explicit EmptySample(const std::string& m) : Error(ErrorKind::Algorithmic, m) {}
};

// k-gon learner
struct TooFewPoints : Error {
  explicit TooFewPoints(const std::string& m) : Error(ErrorKind::Algorithmic, m) {}
};
struct EmptyReferenceSet : Error {
  explicit EmptyReferenceSet(const std::string& m) : Error(ErrorKind::Algorithmic, m) {}
};
struct InstanceTooLarge : Error {
  explicit InstanceTooLarge(const std::string& m) : Error(ErrorKind::Algorithmic, m) {}
};

// convex learner
struct CollinearNet : Error {
  explicit CollinearNet(const std::string& m) : Error(ErrorKind::Algorithmic, m) {}
};

// datasets
struct ParseError : Error {
  explicit ParseError(const std::string& m) : Error(ErrorKind::Data, m) {}
};
struct ValidationError : Error {
  explicit ValidationError(const std::string& m) : Error(ErrorKind::Data, m) {}
};
struct FileExhausted : Error {
  explicit FileExhausted(const std::string& m) : Error(ErrorKind::Data, m) {}
};

// amplification
struct AllInvocationsFailed : Error {
  explicit AllInvocationsFailed(const std::string& m) : Error(ErrorKind::Algorithmic, m) {}
};

}  // namespace planar
