#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "hardy/errors.hpp"
#include "hardy/scenario.hpp"

namespace {

struct Slot {
  std::optional<hardy::ScenarioOutcome> outcome;
  std::string error;
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<hardy::ScenarioConfig> configs;
  try {
    configs = hardy::parse_command_line(argc, argv);
  } catch (const hardy::HelpRequested& h) {
    std::cout << h.what();
    return 0;
  } catch (const hardy::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  for (const auto& c : configs) {
    std::error_code ec;
    std::filesystem::create_directories(c.out, ec);
    if (ec) {
      std::cerr << "error: cannot create output directory " << c.out << ": " << ec.message() << "\n";
      return 2;
    }
    std::ofstream(std::filesystem::path(c.out) / (c.scenario + ".config")) << hardy::describe(c);
  }

  std::vector<Slot> slots(configs.size());
  std::size_t next = 0;
  std::mutex m;
  auto worker = [&] {
    for (;;) {
      std::size_t i;
      {
        std::lock_guard<std::mutex> lock(m);
        if (next == configs.size()) return;
        i = next++;
      }
      try {
        slots[i].outcome = hardy::run_scenario(configs[i]);
      } catch (const std::exception& e) {
        slots[i].error = e.what();
      }
    }
  };
  const int workers = hardy::worker_count(static_cast<int>(configs.size()));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  bool all = true;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    const auto& c = configs[i];
    const auto& s = slots[i];
    if (!s.outcome) {
      std::cerr << "error: " << s.error << "\n";
      std::printf("FAIL %s\n", c.scenario.c_str());
      all = false;
      continue;
    }
    std::ofstream csv(std::filesystem::path(c.out) / (c.scenario + ".csv"));
    hardy::write_csv(csv, s.outcome->rows);
    std::printf("%s\n", hardy::kCsvHeader);
    for (const auto& r : s.outcome->rows) std::printf("%s\n", hardy::format_row(r).c_str());
    for (const auto& msg : s.outcome->messages) std::printf("# %s\n", msg.c_str());
    std::printf("%s %s\n", s.outcome->passed ? "PASS" : "FAIL", c.scenario.c_str());
    all = all && s.outcome->passed;
  }
  return all ? 0 : 1;
}
