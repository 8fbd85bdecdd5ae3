#include <catch2/catch.hpp>

#include <random>

#include "takiff/linalg.hpp"

using namespace takiff;

namespace {

RatMat random_matrix(std::mt19937_64& rng, int r, int c, int lo = -5, int hi = 5) {
  std::uniform_int_distribution<int> d(lo, hi), den(1, 3);
  RatMat m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m.at(i, j) = rat(d(rng), den(rng));
  return m;
}

}  // namespace

TEST_CASE("rank and kernel on a known matrix") {
  RatMat m(2, 3);
  // rows (1,2,3), (2,4,6): rank 1, kernel dim 2
  m.at(0, 0) = 1, m.at(0, 1) = 2, m.at(0, 2) = 3;
  m.at(1, 0) = 2, m.at(1, 1) = 4, m.at(1, 2) = 6;
  CHECK(rank(m) == 1);
  RatMat k = kernel(m);
  CHECK(k.cols() == 2);
  RatMat img = m * k;
  CHECK(img.is_zero());
}

TEST_CASE("kernel vectors are annihilated and complete (random)") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 25; ++t) {
    RatMat m = random_matrix(rng, 5, 7);
    RatMat k = kernel(m);
    CHECK((m * k).is_zero());
    CHECK(rank(m) + k.cols() == m.cols());
    CHECK(rank(k) == k.cols());
  }
}

TEST_CASE("inverse") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 10; ++t) {
    RatMat m = random_matrix(rng, 4, 4);
    if (rank(m) < 4) continue;
    RatMat inv = inverse(m);
    CHECK(m * inv == RatMat::identity(4));
    CHECK(inv * m == RatMat::identity(4));
  }
  RatMat sing(2, 2);
  sing.at(0, 0) = 1, sing.at(0, 1) = 2, sing.at(1, 0) = 2, sing.at(1, 1) = 4;
  CHECK_THROWS_AS(inverse(sing), std::invalid_argument);
}

TEST_CASE("jordan block sizes from kernel-power dimensions (oracle)") {
  // nilpotent with chains 3 + 1 on eigenvalue 5
  RatMat m(4, 4);
  for (int i = 0; i < 4; ++i) m.at(i, i) = 5;
  m.at(0, 1) = 1;
  m.at(1, 2) = 1;
  auto sizes = jordan_block_sizes(m, Rat(5));
  CHECK(sizes == std::vector<int>{3, 1});

  // oracle route: dim ker (m-5)^j = 2, 3, 4 -> partition conjugate (2,1,1) -> blocks {3,1}
  RatMat s = m - RatMat::identity(4) * Rat(5);
  RatMat p = s;
  std::vector<int> kdims;
  kdims.push_back(4 - rank(p));
  p = p * s;
  kdims.push_back(4 - rank(p));
  p = p * s;
  kdims.push_back(4 - rank(p));
  CHECK(kdims == std::vector<int>{2, 3, 4});
}

TEST_CASE("jordan sizes sum to dimension for random nilpotent-plus-scalar") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 10; ++t) {
    // random strictly upper triangular + scalar
    RatMat m(6, 6);
    std::uniform_int_distribution<int> d(-2, 2);
    for (int i = 0; i < 6; ++i) {
      m.at(i, i) = rat(3, 2);
      for (int j = i + 1; j < 6; ++j) m.at(i, j) = d(rng);
    }
    auto sizes = jordan_block_sizes(m, rat(3, 2));
    int total = 0;
    for (int s : sizes) total += s;
    CHECK(total == 6);
  }
}

TEST_CASE("span basis insert/contains") {
  SpanBasis s(3);
  CHECK(s.insert({Rat(1), Rat(2), Rat(0)}));
  CHECK(s.insert({Rat(0), Rat(1), Rat(1)}));
  CHECK_FALSE(s.insert({Rat(1), Rat(3), Rat(1)}));  // sum of the two
  CHECK(s.contains({Rat(2), Rat(4), Rat(0)}));
  CHECK_FALSE(s.contains({Rat(0), Rat(0), Rat(1)}));
  CHECK(s.size() == 2);
}

TEST_CASE("vstack") {
  RatMat a(1, 2), b(2, 2);
  a.at(0, 0) = 1;
  b.at(1, 1) = 2;
  RatMat v = vstack({a, b});
  CHECK(v.rows() == 3);
  CHECK(v.at(0, 0) == 1);
  CHECK(v.at(2, 1) == 2);
}
