#include "fmr/error.hpp"
#include "fmr/parallel.hpp"

#include <atomic>

namespace fmr {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnreadableFile: return "UnreadableFile";
    case ErrorKind::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorKind::NegativeVariance: return "NegativeVariance";
    case ErrorKind::DegenerateGrid: return "DegenerateGrid";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::ParamError: return "ParamError";
    case ErrorKind::StabilityError: return "StabilityError";
    case ErrorKind::UnderResolved: return "UnderResolved";
    case ErrorKind::GridMismatch: return "GridMismatch";
    case ErrorKind::IncompleteMomentSet: return "IncompleteMomentSet";
    case ErrorKind::FractionalPowerOfNegative: return "FractionalPowerOfNegative";
    case ErrorKind::TruncationNotConverged: return "TruncationNotConverged";
    case ErrorKind::ConstraintViolated: return "ConstraintViolated";
    case ErrorKind::NearZeroFactor: return "NearZeroFactor";
    case ErrorKind::LayoutMismatch: return "LayoutMismatch";
    case ErrorKind::EmptyTrainingSet: return "EmptyTrainingSet";
    case ErrorKind::DimMismatch: return "DimMismatch";
    case ErrorKind::TooSmall: return "TooSmall";
    case ErrorKind::EmptyDataset: return "EmptyDataset";
    case ErrorKind::BadLength: return "BadLength";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

namespace {
std::atomic<std::size_t> g_threads{1};
}

std::size_t thread_count() { return g_threads.load(); }

void set_thread_count(std::size_t n) { g_threads.store(n == 0 ? 1 : n); }

}  // namespace fmr
