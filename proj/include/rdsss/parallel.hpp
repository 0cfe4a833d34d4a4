#pragma once

#include <cstddef>
#include <functional>

namespace rdsss {

// Upper bound on worker threads. Defaults to RDS_SS_THREADS when set, else
// the hardware concurrency.
unsigned thread_limit();
void set_thread_limit(unsigned threads);

// Runs body(i) for i in [0, count). Work items are claimed dynamically, so
// bodies must write only to slots owned by their index. The first exception
// thrown by any body is rethrown on the calling thread.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace rdsss
