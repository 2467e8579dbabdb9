#include "knndbscan/exchange.hpp"

#include <exception>
#include <mutex>

namespace knndbscan {

void for_each_rank(int ranks, RankExecution mode, int threads,
                   const std::function<void(int, int)>& fn) {
  const int nt = threads > 0 ? threads : 1;
  if (mode == RankExecution::Sequential || nt == 1 || ranks == 1) {
    for (int r = 0; r < ranks; ++r) fn(r, nt);
    return;
  }
  std::exception_ptr error;
  std::mutex error_mu;
#pragma omp parallel for schedule(dynamic, 1) num_threads(nt < ranks ? nt : ranks)
  for (int r = 0; r < ranks; ++r) {
    try {
      fn(r, 1);
    } catch (...) {
      std::lock_guard lock(error_mu);
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace knndbscan
