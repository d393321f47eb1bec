#pragma once

#include <cstdint>
#include <vector>

namespace hdc {

#if defined(HDC_INDEX64)
using index_t = std::int64_t;
#else
using index_t = std::int32_t;
#endif

using real_t = double;

using DenseVector = std::vector<real_t>;

inline constexpr int index_bytes = static_cast<int>(sizeof(index_t));
inline constexpr int real_bytes = static_cast<int>(sizeof(real_t));

}  // namespace hdc
