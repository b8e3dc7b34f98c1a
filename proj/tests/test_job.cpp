#include "job.hpp"

#include "defsum/decomp.hpp"
#include "defsum/defset.hpp"
#include "defsum/expsum.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <string>

using namespace defsum;
using namespace defsum::tools;

namespace {

std::string job_path(const std::string& rel) { return std::string(DEFSUM_JOBS_DIR) + "/" + rel; }

}  // namespace

TEST(Jobs, EverySampleLoads) {
  for (const auto& entry : std::filesystem::directory_iterator(DEFSUM_JOBS_DIR)) {
    if (entry.path().extension() != ".json") continue;
    const auto job = load_job(entry.path().string());
    EXPECT_FALSE(job.name.empty()) << entry.path();
    EXPECT_EQ(job.y.size(), job.phi.params.size()) << entry.path();
    const Field f = Field::prime(7);
    std::vector<Elem> y;
    for (auto v : job.y) y.push_back(f.from_int(v));
    EXPECT_NO_THROW(count(job.phi, f, y, {1e8, 1, Strategy::Pruned})) << entry.path();
  }
  for (const auto& entry : std::filesystem::directory_iterator(job_path("blocks"))) {
    const auto b = load_block(entry.path().string());
    const PointWeight<Rational> unit = [](const std::vector<Elem>&) { return Rational(1); };
    EXPECT_TRUE(verify_reduction<Rational>(b.block, Field::prime(13), {}, unit).equal) << entry.path();
  }
}

TEST(Jobs, ConicFields) {
  const auto job = load_job(job_path("conic.json"));
  EXPECT_FALSE(job.chi.has_value());
  EXPECT_EQ(job.psi, 0);
  EXPECT_EQ(job.phi.vars, std::vector<std::string>{"x"});
}

TEST(Jobs, RationalMapAndParameters) {
  const auto job = load_job(job_path("shifted_squares.json"));
  EXPECT_EQ(job.phi.params, std::vector<std::string>{"t"});
  EXPECT_EQ(job.y, std::vector<std::int64_t>{1});
  EXPECT_EQ(to_string(job.f.den), "x + 1");
  EXPECT_EQ(job.psi, 1);
}

TEST(Jobs, Errors) {
  EXPECT_THROW(load_job(job_path("missing.json")), Error);
  EXPECT_THROW(job_from_json(json::parse(R"({"formula": "x = z", "vars": ["x"]})")), ParseError);
  EXPECT_THROW(job_from_json(json::parse(R"({"formula": "x = 0", "vars": ["x"], "chi": "cubic"})")), DomainError);
  EXPECT_THROW(
      job_from_json(json::parse(R"({"formula": "x = 0", "vars": ["x"], "g": {"num": "1", "den": "0"}})")),
      DomainError);
}

TEST(Jobs, IntegerLists) {
  EXPECT_EQ(parse_int_list("1,2,-3"), (std::vector<std::int64_t>{1, 2, -3}));
  EXPECT_TRUE(parse_int_list("").empty());
  EXPECT_THROW(parse_int_list("1,a"), ParseError);
}
