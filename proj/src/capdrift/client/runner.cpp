#include "capdrift/client/runner.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>

namespace capdrift {

std::vector<CompletionRecord> run_benchmark(const std::vector<Sample>& samples,
                                            const ModelEndpoint& endpoint,
                                            const DecodingParams& params,
                                            const std::vector<long>& seeds) {
  if (seeds.empty()) throw std::runtime_error("run_benchmark: no seeds");
  if (endpoint.max_concurrency < 1)
    throw std::runtime_error("run_benchmark: max_concurrency must be >= 1");

  struct Job {
    const Sample* sample;
    long seed;
  };
  std::vector<Job> jobs;
  jobs.reserve(samples.size() * seeds.size());
  for (const auto& s : samples)
    for (long seed : seeds) jobs.push_back({&s, seed});

  // one slot per job: workers never contend on output placement
  std::vector<CompletionRecord> records(jobs.size());
  std::atomic<size_t> next{0};
  auto worker = [&records, &jobs, &next, &endpoint, &params]() {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      DecodingParams p = params;
      p.seed = jobs[i].seed;
      records[i] = complete(*jobs[i].sample, endpoint, p);
    }
  };

  size_t nthreads =
      std::min(static_cast<size_t>(endpoint.max_concurrency), jobs.size());
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (size_t t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  std::sort(records.begin(), records.end(),
            [](const CompletionRecord& a, const CompletionRecord& b) {
              if (a.sample_id != b.sample_id) return a.sample_id < b.sample_id;
              return a.seed < b.seed;
            });
  return records;
}

}  // namespace capdrift
