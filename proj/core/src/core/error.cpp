#include "dfcast/error.hpp"

namespace dfcast {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_weekday: return "invalid-weekday";
    case Errc::parse: return "parse";
    case Errc::duplicate_record: return "duplicate-record";
    case Errc::imputation_impossible: return "imputation-impossible";
    case Errc::too_short_series: return "too-short-series";
    case Errc::empty_fit: return "empty-fit";
    case Errc::schema: return "schema";
    case Errc::split: return "split";
    case Errc::numeric: return "numeric";
    case Errc::shape: return "shape";
    case Errc::config: return "config";
    case Errc::training_diverged: return "training-diverged";
    case Errc::search_failed: return "search-failed";
    case Errc::alignment: return "alignment";
    case Errc::empty_input: return "empty-input";
    case Errc::undefined_correlation: return "undefined-correlation";
    case Errc::io: return "io";
  }
  return "unknown";
}

}  // namespace dfcast
