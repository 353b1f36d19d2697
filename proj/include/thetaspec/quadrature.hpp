#ifndef THETASPEC_QUADRATURE_HPP
#define THETASPEC_QUADRATURE_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <span>
#include <thread>
#include <vector>

#include "thetaspec/types.hpp"

namespace thetaspec {

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Cached n-point rule; safe to call concurrently.
const GaussLegendreRule& gauss_legendre(int n);

/// Integral of f over [a, b] by `panels` equal Gauss-Legendre panels of `order` points.
template <typename Fn>
auto integrate_panels(Fn&& f, double a, double b, int panels, int order = 16) {
  const auto& rule = gauss_legendre(order);
  const double width = (b - a) / panels;
  decltype(f(a)) total{};
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * width;
    decltype(f(a)) local{};
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) local += rule.weights[k] * f(mid + 0.5 * width * rule.nodes[k]);
    total += 0.5 * width * local;
  }
  return total;
}

namespace detail {

template <typename T>
T pairwise_sum(std::span<const T> values) {
  if (values.empty()) return T{};
  if (values.size() == 1) return values[0];
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.subspan(0, half)) + pairwise_sum(values.subspan(half));
}

}  // namespace detail

/// Sum of term(i) for i in [0, count). Terms are grouped into fixed blocks
/// and the block partials combined pairwise, so the result is bit-identical
/// for every thread count.
template <typename T, typename Fn>
T parallel_sum(std::size_t count, Fn&& term, int threads = 1, std::size_t block = 512) {
  const std::size_t step = std::max<std::size_t>(1, block);
  const std::size_t blocks = (count + step - 1) / step;
  std::vector<T> partial(blocks, T{});
  auto run_block = [&](std::size_t b) {
    T acc{};
    const std::size_t end = std::min(count, (b + 1) * step);
    for (std::size_t i = b * step; i < end; ++i) acc += term(i);
    partial[b] = acc;
  };
  const auto workers = static_cast<std::size_t>(std::max(1, threads));
  if (workers == 1 || blocks < 2) {
    for (std::size_t b = 0; b < blocks; ++b) run_block(b);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t used = std::min(workers, blocks);
    pool.reserve(used);
    for (std::size_t w = 0; w < used; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t b = w; b < blocks; b += used) run_block(b);
      });
    }
  }
  return detail::pairwise_sum<T>(partial);
}

}  // namespace thetaspec

#endif  // THETASPEC_QUADRATURE_HPP
