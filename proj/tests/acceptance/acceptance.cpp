#include "defsum/lab/paper_examples.hpp"

#include <cstdio>
#include <cstring>
#include <string>
#include <thread>

int main(int argc, char** argv) {
  defsum::lab::PaperConfig cfg;
  cfg.workers = std::max(1U, std::thread::hardware_concurrency());
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--quick") == 0) cfg.quick = true;
  }
  bool all = true;
  defsum::lab::run_paper_examples(cfg, [&](const defsum::lab::CriterionResult& r) {
    all = all && r.pass;
    std::printf("criterion %2d %s: %s [%s] %.2fs\n", r.id, r.pass ? "PASS" : "FAIL", r.title.c_str(), r.detail.c_str(),
                r.seconds);
    std::fflush(stdout);
  });
  std::printf("%s\n", all ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL");
  return all ? 0 : 1;
}
