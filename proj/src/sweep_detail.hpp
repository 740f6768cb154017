#pragma once

#include "kerrcomm/sweep.hpp"

namespace kerrcomm::detail {

/// Validated, allocated result shell with axis values filled in.
SweepResult prepare(const SweepSpec& spec);

/// Work item k of the flattened (grid point, Kerr series) index space.
PointResult evaluate_work_item(const SweepSpec& spec, const SweepResult& layout, std::size_t k);

void finalize_contrast(SweepResult& result);

}  // namespace kerrcomm::detail
