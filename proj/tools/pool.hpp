#pragma once

// Fan-out over independent grid points with in-order delivery to a single
// writer. Workers pull indices from a shared counter; the calling thread
// hands each result to `sink` as soon as every earlier index is done.

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <thread>
#include <vector>

namespace spinor::cli {

template <class Row>
void ordered_parallel(std::size_t begin, std::size_t end, int jobs,
                      const std::function<Row(std::size_t)> &compute,
                      const std::function<void(std::size_t, const Row &)> &sink) {
  if (begin >= end)
    return;
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(1, jobs)), end - begin);
  std::atomic<std::size_t> next{begin};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex mu;
  std::condition_variable cv;
  std::map<std::size_t, Row> done;

  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= end || failed)
        break;
      try {
        Row r = compute(i);
        std::lock_guard lock(mu);
        done.emplace(i, std::move(r));
      } catch (...) {
        std::lock_guard lock(mu);
        if (!error)
          error = std::current_exception();
        failed = true;
      }
      cv.notify_one();
    }
  };

  std::vector<std::thread> threads;
  for (std::size_t w = 0; w < workers; ++w)
    threads.emplace_back(work);

  std::size_t expected = begin;
  std::exception_ptr sink_error;
  while (expected < end) {
    std::unique_lock lock(mu);
    cv.wait(lock, [&] { return failed || done.count(expected) > 0; });
    if (failed)
      break;
    Row r = std::move(done.at(expected));
    done.erase(expected);
    lock.unlock();
    try {
      sink(expected, r);
    } catch (...) {
      sink_error = std::current_exception();
      failed = true;
      break;
    }
    ++expected;
  }
  for (auto &t : threads)
    t.join();
  if (sink_error)
    std::rethrow_exception(sink_error);
  if (error)
    std::rethrow_exception(error);
}

} // namespace spinor::cli
