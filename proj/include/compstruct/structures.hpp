#pragma once

#include "compstruct/presentation.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace compstruct {

/// (ω, <) on its natural codes. Family 0 is `<`.
Presentation omega_order();

/// (ℤ, <) with the zigzag coding 0, -1, 1, -2, 2, ... ↦ 0, 1, 2, 3, 4, ...
Presentation integer_order();
std::int64_t zigzag_decode(Code c);
Code zigzag_encode(std::int64_t v);

/// ({0..n-1}, <).
Presentation finite_order(std::size_t n);

/// ({0..n-1}, E) with the given directed edges. Family 0 is `E`.
Presentation finite_digraph(std::size_t n, const std::vector<std::pair<Code, Code>>& edges,
                            std::string name = "digraph");

/// The directed path P_n: edges (k, k+1) for k < n - 1.
Presentation path_graph(std::size_t n);

/// The 3-node digraph with E = {(0,1), (1,0), (0,2), (1,2)}.
Presentation figure1_base();

/// A single point with no facts over the given signature.
Presentation single_point(Signature signature);

} // namespace compstruct
