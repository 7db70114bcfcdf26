#pragma once

#include <cstddef>
#include <functional>

namespace fockdual {

/// Runs body(i) for i in [0, count) on up to `threads` workers. Each index
/// runs exactly once; callers store per-index results and reduce them in
/// index order, which keeps results independent of the thread count. The
/// exception of the lowest failing index is rethrown.
void for_each_index(std::size_t count, int threads, const std::function<void(std::size_t)>& body);

}  // namespace fockdual
