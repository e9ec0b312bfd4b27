#pragma once

#include <compare>
#include <string>
#include <utility>

#include "dfcast/error.hpp"

namespace dfcast {

template <class Tag>
class Id {
 public:
  /// Empty placeholder; only parsed or constructed-from-string ids are valid.
  Id() = default;
  explicit Id(std::string value) : value_(std::move(value)) {
    if (value_.empty()) throw Error(Errc::schema, "identifier must be non-empty");
  }

  const std::string& str() const noexcept { return value_; }
  bool empty() const noexcept { return value_.empty(); }

  auto operator<=>(const Id&) const = default;

 private:
  std::string value_;
};

using ProductId = Id<struct ProductTag>;
using WarehouseId = Id<struct WarehouseTag>;

/// One demand series: a product stocked in a warehouse.
struct SeriesKey {
  ProductId product;
  WarehouseId warehouse;

  auto operator<=>(const SeriesKey&) const = default;

  std::string label() const { return product.str() + "@" + warehouse.str(); }
};

}  // namespace dfcast
