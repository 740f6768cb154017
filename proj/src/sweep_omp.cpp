#include "kerrcomm/sweep.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include "sweep_detail.hpp"

namespace kerrcomm {

SweepResult run_sweep(const SweepSpec& spec, int threads) {
  SweepResult result = detail::prepare(spec);
  const auto n = static_cast<std::ptrdiff_t>(result.points.size());
#ifdef _OPENMP
  const int workers = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 16) num_threads(workers)
#endif
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    // Each item writes only its own slot; the layout is read-only here.
    result.points[static_cast<std::size_t>(k)] =
        detail::evaluate_work_item(spec, result, static_cast<std::size_t>(k));
  }
  detail::finalize_contrast(result);
  return result;
}

}  // namespace kerrcomm
