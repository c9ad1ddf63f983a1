#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "relay/core.hpp"

using namespace relay;

TEST_CASE("channel generation is deterministic in the seed") {
  const Scenario a = generate_channels(2, 2, 1.0, 1.0, 7);
  const Scenario b = generate_channels(2, 2, 1.0, 1.0, 7);
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k)
      CHECK(a.channel(i, k) == b.channel(i, k));
  const Scenario c = generate_channels(2, 2, 1.0, 1.0, 8);
  CHECK(a.channel(0, 0) != c.channel(0, 0));
}

TEST_CASE("channel generation shape") {
  const Scenario s = generate_channels(1, 4, 1.0, 1.0, 1);
  CHECK(s.n_pairs == 1);
  CHECK(s.channels.size() == 1);
  CHECK(s.channel(0, 0).size() == 4);
  CHECK(s.channel(0, 1).size() == 4);
}

TEST_CASE("invalid generation arguments are rejected") {
  CHECK_THROWS_AS(generate_channels(0, 2, 1.0, 1.0, 1), ValidationError);
  CHECK_THROWS_AS(generate_channels(2, 0, 1.0, 1.0, 1), ValidationError);
  CHECK_THROWS_AS(generate_channels(2, 2, 0.0, 1.0, 1), ValidationError);
  CHECK_THROWS_AS(generate_channels(2, 2, 1.0, -1.0, 1), ValidationError);
}

TEST_CASE("sampled entries match the CN(0,1) law") {
  GaussianStream stream(12345, 0);
  const int n = 100000;
  Complex mean = 0.0;
  double second_moment = 0.0;
  for (int i = 0; i < n; ++i) {
    const Complex z = stream.next_complex();
    mean += z;
    second_moment += std::norm(z);
  }
  mean /= static_cast<double>(n);
  second_moment /= static_cast<double>(n);
  const double variance = second_moment - std::norm(mean);
  CHECK(std::abs(mean) <= 0.02);
  CHECK(variance >= 0.97);
  CHECK(variance <= 1.03);
}

TEST_CASE("substreams are independent of generation order") {
  // Generating pair (1, k) channels never consumes pair-0 stream state.
  const Scenario full = generate_channels(3, 4, 1.0, 1.0, 99);
  GaussianStream direct(99, 2 * 2 + 1);
  CHECK(full.channel(2, 1) == direct.next_vector(4));
}

TEST_CASE("dominant eigpair on a rank-1 matrix") {
  VectorXcd u(2);
  u << Complex(0.6, 0.0), Complex(0.0, 0.8);
  const MatrixXcd m = 5.0 * u * u.adjoint();
  const EigPair e = dominant_eigpair(m);
  CHECK(e.value == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(std::abs(std::abs(u.dot(e.vector)) - 1.0) < 1e-10);
}

TEST_CASE("dominant eigpair on a diagonal matrix") {
  MatrixXcd m = MatrixXcd::Zero(2, 2);
  m(0, 0) = 3.0;
  m(1, 1) = 1.0;
  const EigPair e = dominant_eigpair(m);
  CHECK(e.value == doctest::Approx(3.0));
  CHECK(std::abs(e.vector(0) - Complex(1.0, 0.0)) < 1e-12);
  CHECK(std::abs(e.vector(1)) < 1e-12);
}

TEST_CASE("identity tie-break selects e1") {
  const EigPair e = dominant_eigpair(MatrixXcd::Identity(2, 2));
  CHECK(std::abs(e.vector(0) - Complex(1.0, 0.0)) < 1e-12);
}

TEST_CASE("eigen residual on random Hermitian PSD matrices") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    GaussianStream stream(seed, 0);
    MatrixXcd a(4, 4);
    for (int i = 0; i < 4; ++i) a.col(i) = stream.next_vector(4);
    const MatrixXcd m = a * a.adjoint();
    const EigPair e = dominant_eigpair(m);
    CHECK((m * e.vector - e.value * e.vector).norm() <=
          kEigResidualTol * (1.0 + std::abs(e.value)));
    CHECK(std::abs(e.vector.norm() - 1.0) <= 1e-12);
    // Largest eigenvalue dominates the Rayleigh quotient of random probes.
    const VectorXcd probe = GaussianStream(seed, 1).next_unit_vector(4);
    CHECK(e.value + 1e-9 >= (probe.adjoint() * m * probe)(0, 0).real());
  }
}

TEST_CASE("shift property: eigpair of A + cI") {
  GaussianStream stream(5, 0);
  MatrixXcd a(3, 3);
  for (int i = 0; i < 3; ++i) a.col(i) = stream.next_vector(3);
  const MatrixXcd m = a * a.adjoint();
  const EigPair base = dominant_eigpair(m);
  const double c = 2.5;
  const EigPair shifted =
      dominant_eigpair(m + c * MatrixXcd::Identity(3, 3));
  CHECK(shifted.value == doctest::Approx(base.value + c).epsilon(1e-9));
  CHECK((shifted.vector - base.vector).norm() < 1e-9);
}

TEST_CASE("eigenvalue sum equals trace") {
  GaussianStream stream(17, 0);
  MatrixXcd a(4, 4);
  for (int i = 0; i < 4; ++i) a.col(i) = stream.next_vector(4);
  const MatrixXcd m = a * a.adjoint();
  const VectorXd ev = hermitian_eigenvalues(m);
  CHECK(ev.sum() == doctest::Approx(m.real().trace()).epsilon(1e-9));
}

TEST_CASE("non-Hermitian input is rejected") {
  MatrixXcd m(2, 2);
  m << Complex(1, 0), Complex(2, 1), Complex(0, 0), Complex(1, 0);
  CHECK_THROWS_AS(dominant_eigpair(m), ValidationError);
}

TEST_CASE("scenario JSON round-trip") {
  const Scenario s = generate_channels(2, 3, 0.5, 4.0, 42);
  const Scenario back = scenario_from_json(scenario_to_json(s));
  CHECK(back.n_pairs == s.n_pairs);
  CHECK(back.n_antennas == s.n_antennas);
  CHECK(back.sigma2 == s.sigma2);
  CHECK(back.power_budget == s.power_budget);
  CHECK(back.seed == s.seed);
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k)
      CHECK(back.channel(i, k) == s.channel(i, k));
  // A second serialization is byte-identical.
  CHECK(scenario_to_json(back) == scenario_to_json(s));
}

TEST_CASE("missing sigma2 is a parse error") {
  const char* text = R"({"n_pairs":1,"n_antennas":1,"power_budget":1.0,
    "channels":[[[[1.0,0.0]],[[0.0,1.0]]]]})";
  CHECK_THROWS_WITH_AS(scenario_from_json(text),
                       doctest::Contains("sigma2"), ValidationError);
}

TEST_CASE("malformed channel entry is reported with its position") {
  const char* text = R"({"n_pairs":1,"n_antennas":1,"sigma2":1.0,
    "power_budget":1.0,"channels":[[[[1.0]],[[0.0,1.0]]]]})";
  CHECK_THROWS_WITH_AS(scenario_from_json(text),
                       doctest::Contains("channels[0][0]"), ValidationError);
}

TEST_CASE("published channel norms can be imposed exactly") {
  const std::array<std::array<double, 2>, 2> norms{{{3.28, 2.9}, {1.77, 2.2}}};
  const Scenario s = scenario_with_norms(norms, 1.0, 2.0, 11);
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k)
      CHECK(s.channel(i, k).squaredNorm() ==
            doctest::Approx(norms[static_cast<std::size_t>(i)]
                                 [static_cast<std::size_t>(k)])
                .epsilon(1e-12));
}

TEST_CASE("scenario file write/read") {
  const Scenario s = generate_channels(1, 2, 1.0, 1.0, 3);
  const std::string path = "test_scenario_tmp.json";
  save_scenario(s, path);
  const Scenario back = load_scenario(path);
  CHECK(back.channel(0, 1) == s.channel(0, 1));
  std::remove(path.c_str());
}
