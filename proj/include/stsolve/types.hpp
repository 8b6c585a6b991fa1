#ifndef STSOLVE_TYPES_HPP
#define STSOLVE_TYPES_HPP

#include <cstdint>
#include <vector>

namespace stsolve {

using index_t = std::int64_t;

/// Dense real vector; length always matches the paired matrix dimension.
using DenseVector = std::vector<double>;

} // namespace stsolve

#endif // STSOLVE_TYPES_HPP
