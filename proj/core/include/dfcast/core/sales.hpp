#pragma once

#include <optional>

#include "dfcast/core/date.hpp"
#include "dfcast/core/ids.hpp"

namespace dfcast {

/// One product x warehouse x working-day observation.
struct SalesRecord {
  Date date;
  ProductId product;
  WarehouseId warehouse;
  double demand = 0.0;
  std::optional<double> price;
  bool promotion = false;
  double known_orders = 0.0;
};

}  // namespace dfcast
