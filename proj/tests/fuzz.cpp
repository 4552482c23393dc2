// Randomized end-to-end runs: generator -> pipeline -> tableau -> CQA, with
// the oracle as referee. Exits nonzero on the first invariant failure.
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "fuzz_common.hpp"

int main(int argc, char **argv) {
  CLI::App app{"dl4x fuzz harness"};
  std::size_t runs = 1000;
  std::uint64_t seed = 1;
  double cap = 30.0;
  bool no_oracle = false;
  app.add_option("--runs", runs, "number of runs");
  app.add_option("--seed", seed, "first seed");
  app.add_option("--cap-seconds", cap, "wall-clock cap per run");
  app.add_flag("--no-oracle", no_oracle, "skip the DL oracle cross-check");
  CLI11_PARSE(app, argc, argv);

  using clock = std::chrono::steady_clock;
  std::atomic<std::int64_t> started{clock::now().time_since_epoch().count()};
  std::atomic<std::uint64_t> current{seed};
  std::atomic<bool> done{false};
  // a run that never returns cannot be interrupted, so the watchdog ends the process
  std::thread watchdog([&] {
    while (!done) {
      std::this_thread::sleep_for(std::chrono::milliseconds(200));
      auto t0 = clock::time_point(clock::duration(started.load()));
      if (std::chrono::duration<double>(clock::now() - t0).count() > cap) {
        std::fprintf(stderr, "seed %llu exceeded the %.0f s cap\n", static_cast<unsigned long long>(current.load()),
                     cap);
        std::_Exit(3);
      }
    }
  });

  std::size_t budget = 0, unsupported = 0;
  double worst = 0;
  int status = 0;
  for (std::size_t i = 0; i < runs; ++i) {
    const std::uint64_t s = seed + i;
    current = s;
    const auto t0 = clock::now();
    started = t0.time_since_epoch().count();
    auto r = dl4x::testing::fuzz_one(s, !no_oracle);
    worst = std::max(worst, std::chrono::duration<double>(clock::now() - t0).count());
    budget += r.budget;
    unsupported += r.unsupported;
    if (!r.ok) {
      std::cerr << r.message << "\n";
      status = 1;
      break;
    }
  }
  done = true;
  watchdog.join();
  std::cout << "runs " << runs << " budget " << budget << " unsupported " << unsupported << " worst "
            << worst << " s\n";
  return status;
}
