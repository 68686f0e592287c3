#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>

#include <sfgm/rng.hpp>

using namespace sfgm;

TEST_CASE("same seed reproduces the exact output stream") {
  Xoshiro256pp a(42), b(42);
  for (int i = 0; i < 64; ++i) CHECK(a.next() == b.next());
}

TEST_CASE("different seeds diverge immediately") {
  Xoshiro256pp a(1), b(2);
  bool differ = false;
  for (int i = 0; i < 4; ++i) differ |= (a.next() != b.next());
  CHECK(differ);
}

TEST_CASE("stream splitting xors a golden-ratio multiple into the seed") {
  const std::uint64_t seed = 0xDEADBEEFCAFEF00Dull;
  for (std::uint64_t id = 0; id <= 5; ++id) {
    Xoshiro256pp direct(seed ^ (0x9E3779B97F4A7C15ull * (id + 1)));
    Xoshiro256pp via = make_stream(seed, static_cast<Stream>(id));
    for (int i = 0; i < 8; ++i) CHECK(direct.next() == via.next());
  }
}

TEST_CASE("purpose streams of one seed are mutually distinct") {
  auto spectrum = make_stream(7, Stream::kSpectrum);
  auto targets = make_stream(7, Stream::kTargets);
  auto start = make_stream(7, Stream::kStart);
  CHECK(spectrum.next() != targets.next());
  CHECK(spectrum.next() != start.next());
  CHECK(targets.next() != start.next());
}

TEST_CASE("uniform lies in [0,1) with the right mean") {
  Xoshiro256pp rng(123);
  const int n = 200000;
  double sum = 0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  // mean of U[0,1) is 1/2 with sd 1/sqrt(12); allow 3 sigma of the sample mean
  const double tol = 3.0 / std::sqrt(12.0) / std::sqrt(double(n));
  CHECK(std::abs(sum / n - 0.5) < tol);
}

TEST_CASE("uniform_below respects the bound and covers the range") {
  Xoshiro256pp rng(99);
  const std::uint64_t bound = 10;
  long counts[10] = {};
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const std::uint64_t r = rng.uniform_below(bound);
    REQUIRE(r < bound);
    counts[r] += 1;
  }
  // each bucket expects n/10 = 10000, sd ~ 95; 10 buckets, stay loose
  for (long c : counts) {
    CHECK(c > 9000);
    CHECK(c < 11000);
  }
}

TEST_CASE("normal draws match N(0,1) moments within 3 sigma") {
  Xoshiro256pp rng(2024);
  const int n = 200000;
  double sum = 0, sumsq = 0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    sum += z;
    sumsq += z * z;
  }
  const double mean = sum / n;
  const double var = sumsq / n - mean * mean;
  CHECK(std::abs(mean) < 3.0 / std::sqrt(double(n)));
  // sample variance of a normal has sd ~ sqrt(2/n)
  CHECK(std::abs(var - 1.0) < 3.0 * std::sqrt(2.0 / double(n)));
}

TEST_CASE("vector helpers consume the stream in order") {
  Xoshiro256pp a(5), b(5);
  const auto vec = random_normal_vector<double>(6, a);
  for (Eigen::Index i = 0; i < 6; ++i) CHECK(vec[i] == b.normal());

  Xoshiro256pp c(5), d(5);
  const auto uni = random_uniform_vector<double>(4, c);
  for (Eigen::Index i = 0; i < 4; ++i) {
    CHECK(uni[i] == d.uniform());
    CHECK(uni[i] >= 0.0);
    CHECK(uni[i] < 1.0);
  }
}

TEST_CASE("matrix fill is column-major: entry (i,j) is draw j*rows+i") {
  Xoshiro256pp a(31), b(31);
  const auto mat = random_normal_matrix<double>(3, 2, a);
  const auto flat = random_normal_vector<double>(6, b);
  for (Eigen::Index j = 0; j < 2; ++j)
    for (Eigen::Index i = 0; i < 3; ++i) CHECK(mat(i, j) == flat[j * 3 + i]);
}
