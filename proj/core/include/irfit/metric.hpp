#pragma once

#include <cmath>
#include <concepts>
#include <functional>

namespace irfit {

template <class D>
concept MetricDomain = requires(const D& domain, const typename D::Point& a, const typename D::Point& b) {
  typename D::Point;
  { domain.distance(a, b) } -> std::convertible_to<double>;
};

/// A metric domain on which a regularized model can be minimized globally and
/// approximate criticality can be certified.
template <class D>
concept SearchableDomain =
    MetricDomain<D> &&
    requires(const D& domain, const std::function<double(const typename D::Point&)>& objective,
             const typename D::Point& anchor, double tolerance) {
      { domain.minimize(objective, anchor, tolerance) } -> std::same_as<typename D::Point>;
      { domain.is_critical(objective, anchor, tolerance) } -> std::same_as<bool>;
    };

}  // namespace irfit
