#pragma once

#include <vector>

#include "capdrift/client/chat_client.hpp"

namespace capdrift {

// samples × seeds, issued concurrently up to endpoint.max_concurrency and
// returned canonically ordered by (sample id, seed) whatever the completion
// order — so concurrency level can never change the output. Per-sample
// failures come back as error records; only configuration problems throw.
std::vector<CompletionRecord> run_benchmark(const std::vector<Sample>& samples,
                                            const ModelEndpoint& endpoint,
                                            const DecodingParams& params,
                                            const std::vector<long>& seeds);

}  // namespace capdrift
