// Copyright 2026 The dpcomm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DPCOMM_PARALLEL_H_
#define DPCOMM_PARALLEL_H_

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace dpcomm {

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void Add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  void Add(const CompensatedSum& other) noexcept {
    Add(other.sum_);
    Add(other.carry_);
  }
  double Value() const noexcept { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

// Number of trials handled by one work item. Fixed so that the partition of
// trials, and hence every floating-point reduction, does not depend on the
// worker count.
inline constexpr uint64_t kTrialBlock = uint64_t{1} << 14;

inline unsigned ResolveJobs(unsigned jobs) {
  if (jobs != 0) return jobs;
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs fn(begin, end) over [0, trials) in kTrialBlock-sized blocks on up to
// `jobs` threads and returns the per-block results in block order.
template <typename Acc, typename Fn>
std::vector<Acc> RunBlocks(uint64_t trials, unsigned jobs, Fn&& fn) {
  const uint64_t blocks = (trials + kTrialBlock - 1) / kTrialBlock;
  std::vector<Acc> out(blocks);
  std::atomic<uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    try {
      for (uint64_t b = next++; b < blocks; b = next++) {
        const uint64_t begin = b * kTrialBlock;
        out[b] = fn(begin, std::min(trials, begin + kTrialBlock));
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mu);
      if (!failure) failure = std::current_exception();
    }
  };
  const unsigned n = static_cast<unsigned>(
      std::min<uint64_t>(ResolveJobs(jobs), std::max<uint64_t>(blocks, 1)));
  if (n <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n);
    for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace dpcomm

#endif  // DPCOMM_PARALLEL_H_
