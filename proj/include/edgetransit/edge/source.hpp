#pragma once

#include <cstdint>

#include "edgetransit/core/avl.hpp"

namespace edgetransit::edge {

struct SourcePull {
    enum class Kind { kRecord, kTimeout, kExhausted };
    Kind kind = Kind::kExhausted;
    core::RawRecord record;
};

/// Pull interface the pipeline drains. kTimeout lets the caller run
/// wall-clock idle checks between arrivals.
class RecordSource {
  public:
    virtual ~RecordSource() = default;
    virtual SourcePull next(int timeout_ms) = 0;
    virtual std::int64_t malformed_skipped() const = 0;
};

}  // namespace edgetransit::edge
