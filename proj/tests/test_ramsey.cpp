#include <doctest.h>

#include <auger/bloch.hpp>
#include <auger/constants.hpp>
#include <auger/error.hpp>
#include <auger/fringe.hpp>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

using namespace auger;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

TEST_SUITE("ramsey") {

TEST_CASE("bloch vector endpoints") {
  CoherenceParams cp{161.0, 1930.0, 1.0543};
  cp.validate();

  BlochVector start = bloch_evolve(cp, 0.0);
  CHECK(start.mx == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(start.my == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(start.mz == doctest::Approx(0.0).epsilon(1e-14));

  BlochVector late = bloch_evolve(cp, 1e7);
  CHECK(std::abs(late.mx) < 1e-12);
  CHECK(std::abs(late.my) < 1e-12);
  CHECK(late.mz == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("transverse decay combines lifetime and pure dephasing") {
  CoherenceParams cp{161.0, 1930.0, 1.0543};
  CHECK(cp.transverse_rate() ==
        doctest::Approx(1.0 / 322.0 + 1.0 / 1930.0).epsilon(1e-14));

  BlochVector b = bloch_evolve(cp, 100.0);
  CHECK(b.transverse_magnitude() ==
        doctest::Approx(std::exp(-100.0 * cp.transverse_rate())).epsilon(1e-12));
  CHECK(b.mx == doctest::Approx(0.629780).epsilon(1e-4));

  std::mt19937 rng(3);
  std::uniform_real_distribution<double> time(0.0, 900.0);
  for (int i = 0; i < 200; ++i) {
    const double t = time(rng);
    CHECK(bloch_evolve(cp, t).transverse_magnitude() ==
          doctest::Approx(std::exp(-t * cp.transverse_rate())).epsilon(1e-12));
  }
}

TEST_CASE("bloch parameter validation") {
  CHECK_THROWS_AS(bloch_evolve(CoherenceParams{161.0, 1930.0, 1.0543}, -1.0), Error);
  try {
    CoherenceParams{0.0, 1930.0, 1.0543}.validate();
    FAIL("expected invalid_params");
  } catch (const Error& e) {
    CHECK(e.code() == "invalid_params");
  }
  CHECK_THROWS_AS((CoherenceParams{161.0, -5.0, 1.0543}.validate()), Error);
  CHECK_THROWS_AS((CoherenceParams{161.0, 1930.0, 0.0}.validate()), Error);
  // no pure dephasing at all is a legal configuration
  CoherenceParams{161.0, kInf, 1.0543}.validate();
}

TEST_CASE("fringe formula and bounds") {
  CoherenceParams cp{161.0, 1930.0, 1.0543};
  CHECK(ramsey_population(cp, 0.0) == doctest::Approx(0.5).epsilon(1e-14));

  std::mt19937 rng(11);
  std::uniform_real_distribution<double> tau(1.0, 500.0);
  std::uniform_real_distribution<double> star(10.0, 5000.0);
  std::uniform_real_distribution<double> freq(0.05, 3.0);
  std::uniform_real_distribution<double> delay(0.0, 1500.0);
  for (int i = 0; i < 100000; ++i) {
    CoherenceParams p{tau(rng), star(rng), freq(rng)};
    const double dt = delay(rng);
    const double v = ramsey_population(p, dt);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
    const double want =
        0.5 * (1.0 - std::exp(-dt * p.transverse_rate()) *
                         std::sin(2.0 * M_PI * p.nu * dt));
    CHECK(v == doctest::Approx(want).epsilon(1e-12));
  }

  // at one expected coherence time the envelope has shrunk to ~1/e
  CHECK(std::exp(-276.0 * cp.transverse_rate()) ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-3));
}

TEST_CASE("coherence relation between T1, T2 and T2*") {
  CHECK(coherence_relation(161.0, 276.0) == doctest::Approx(1932.0).epsilon(1e-9));
  CHECK(coherence_relation(161.0, 276.0) == doctest::Approx(1930.0).epsilon(0.01));
  CHECK(coherence_from(161.0, kInf) == doctest::Approx(322.0).epsilon(1e-12));
  CHECK(coherence_from(161.0, 1930.0) == doctest::Approx(275.959147425).epsilon(1e-9));

  // lifetime-limited boundary: T2 = 2 T1 has no finite dephasing solution
  try {
    coherence_relation(161.0, 322.0);
    FAIL("expected no_solution");
  } catch (const Error& e) {
    CHECK(e.code() == "no_solution");
  }
  CHECK_THROWS_AS(coherence_relation(161.0, 400.0), Error);
  CHECK_THROWS_AS(coherence_relation(-1.0, 100.0), Error);

  std::mt19937 rng(5);
  std::uniform_real_distribution<double> tau(20.0, 400.0);
  std::uniform_real_distribution<double> star(50.0, 9000.0);
  for (int i = 0; i < 500; ++i) {
    const double t1 = tau(rng), t2_star = star(rng);
    const double t2 = coherence_from(t1, t2_star);
    CHECK(coherence_relation(t1, t2) == doctest::Approx(t2_star).epsilon(1e-12));
  }
}

TEST_CASE("local extrema refinement lands on parabola vertices") {
  std::vector<double> x, ymin, ymax;
  for (int i = 0; i <= 40; ++i) {
    const double u = 0.1 * i;
    x.push_back(u);
    ymin.push_back((u - 1.73) * (u - 1.73) + 0.2);
    ymax.push_back(-(u - 2.31) * (u - 2.31));
  }
  auto mins = local_minima(x, ymin);
  REQUIRE(mins.size() == 1);
  CHECK(mins[0].x == doctest::Approx(1.73).epsilon(1e-12));
  CHECK(mins[0].y == doctest::Approx(0.2).epsilon(1e-12));
  auto maxs = local_maxima(x, ymax);
  REQUIRE(maxs.size() == 1);
  CHECK(maxs[0].x == doctest::Approx(2.31).epsilon(1e-12));

  CHECK_THROWS_AS(local_minima({0.0, 1.0}, {1.0, 2.0}), Error);
}

TEST_CASE("fringe amplitude from a sampled oscillation") {
  std::vector<double> t, v;
  for (int i = 0; i < 300; ++i) {
    const double u = 20.0 + 0.01 * i;
    t.push_back(u);
    v.push_back(0.5 + 0.37 * std::sin(2.0 * M_PI * 1.0543 * u));
  }
  FringeAmplitude a = fringe_amplitude(t, v);
  CHECK(a.amplitude == doctest::Approx(0.37).epsilon(0.01));
  CHECK(a.delay > 20.0);
  CHECK(a.delay < 23.0);

  std::vector<double> flat_t, flat_v;
  for (int i = 0; i < 100; ++i) {
    flat_t.push_back(0.1 * i);
    flat_v.push_back(0.3 + 0.001 * i);
  }
  try {
    fringe_amplitude(flat_t, flat_v);
    FAIL("expected no_oscillation");
  } catch (const Error& e) {
    CHECK(e.code() == "no_oscillation");
  }
}

TEST_CASE("synthetic fringe amplitudes decay with delay") {
  CoherenceParams cp{161.0, 1930.0, 1.0543};
  std::vector<double> coarse{10.0, 60.0, 110.0, 160.0};
  auto samples = synthetic_fringe_amplitudes(cp, coarse, 0.05);
  REQUIRE(samples.size() == 4);
  for (std::size_t i = 1; i < samples.size(); ++i)
    CHECK(samples[i].amplitude < samples[i - 1].amplitude);
  for (const auto& s : samples) {
    CHECK(s.amplitude ==
          doctest::Approx(0.5 * std::exp(-s.delay * cp.transverse_rate()))
              .epsilon(5e-3));
  }
  CHECK_THROWS_AS(synthetic_fringe_amplitudes(cp, coarse, 0.5), Error);
}

TEST_CASE("envelope fit recovers a clean exponential exactly") {
  std::vector<FringeAmplitude> s;
  for (int i = 0; i < 8; ++i) {
    const double t = 10.0 + 40.0 * i;
    s.push_back({t, 0.5 * std::exp(-t / 276.0)});
  }
  EnvelopeFit e = fringe_envelope_fit(s);
  CHECK(e.t2 == doctest::Approx(276.0).epsilon(1e-9));
  CHECK(e.amplitude == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(e.raw.converged);
}

TEST_CASE("envelope fit through the full fringe pipeline") {
  CoherenceParams cp{161.0, 1930.0, 1.0543};
  std::vector<double> coarse;
  for (int i = 0; i < 12; ++i) coarse.push_back(5.0 + 115.0 / 11.0 * i);
  EnvelopeFit e = fringe_envelope_fit(synthetic_fringe_amplitudes(cp, coarse, 0.05));
  const double t2_true = coherence_from(161.0, 1930.0);
  CHECK(e.t2 == doctest::Approx(t2_true).epsilon(5e-3));
  CHECK(std::abs(e.t2 - 276.0) < 1.0);
}

TEST_CASE("envelope fit input validation") {
  std::vector<FringeAmplitude> few{{0.0, 1.0}, {1.0, 0.9}, {2.0, 0.8}};
  CHECK_THROWS_AS(fringe_envelope_fit(few), Error);
  std::vector<FringeAmplitude> neg{{0.0, 1.0}, {1.0, -0.9}, {2.0, 0.8}, {3.0, 0.7}};
  CHECK_THROWS_AS(fringe_envelope_fit(neg), Error);

  // constant amplitudes have no decay scale to fit
  std::vector<FringeAmplitude> flat;
  for (int i = 0; i < 5; ++i) flat.push_back({10.0 + 20.0 * i, 0.5});
  try {
    fringe_envelope_fit(flat);
    FAIL("expected unbounded_parameter");
  } catch (const Error& e) {
    CHECK(e.code() == "unbounded_parameter");
  }
}

TEST_CASE("noisy envelope estimates stay within the stated window") {
  // 5% multiplicative gaussian noise, 20 samples: at least 95% of trials
  // must land within +-15 ps of the true T2
  CoherenceParams cp{161.0, 1930.0, 1.0543};
  std::vector<double> coarse;
  for (int i = 0; i < 20; ++i) coarse.push_back(20.0 + 400.0 / 19.0 * i);
  auto clean = synthetic_fringe_amplitudes(cp, coarse, 0.05);
  const double t2_true = coherence_from(161.0, 1930.0);

  std::mt19937 rng(20260819);
  std::normal_distribution<double> g(0.0, 0.05);
  int hits = 0;
  const int trials = 1000;
  for (int k = 0; k < trials; ++k) {
    std::vector<FringeAmplitude> noisy = clean;
    for (auto& s : noisy) s.amplitude *= (1.0 + g(rng));
    try {
      if (std::abs(fringe_envelope_fit(noisy).t2 - t2_true) <= 15.0) ++hits;
    } catch (const Error&) {
      // a failed fit counts as a miss
    }
  }
  CHECK(hits >= 950);
  CHECK(hits == 968);  // deterministic given the seed
}

TEST_CASE("dft peak recovers the precession frequency") {
  std::vector<double> t(256), pure(256), fringe(256);
  CoherenceParams cp{161.0, 1930.0, 1.0543};
  for (int i = 0; i < 256; ++i) {
    t[i] = 24.0 * i / 255.0;
    pure[i] = std::sin(2.0 * M_PI * 1.0543 * t[i]);
    fringe[i] = ramsey_population(cp, t[i]);
  }
  const double nu_pure = dft_peak(t, pure, 1.0543);
  CHECK(std::abs(nu_pure - 1.0543) < 0.002);
  CHECK(nu_pure == doctest::Approx(1.054791).epsilon(1e-4));

  const double nu_fringe = dft_peak(t, fringe, 1.0543);
  CHECK(std::abs(nu_fringe - 1.0543) < 0.01);

  Spectrum sp = dft_spectrum(t, pure);
  REQUIRE(!sp.freq.empty());
  CHECK(sp.freq.front() == 0.0);
  CHECK(sp.freq.size() == sp.magnitude.size());
}

TEST_CASE("dft error paths") {
  std::vector<double> t(256), flat(256, 0.4);
  for (int i = 0; i < 256; ++i) t[i] = 24.0 * i / 255.0;
  try {
    dft_peak(t, flat, 1.0);
    FAIL("expected no_peak");
  } catch (const Error& e) {
    CHECK(e.code() == "no_peak");
  }

  try {
    dft_peak(t, flat, 9.0);
    FAIL("expected aliasing");
  } catch (const Error& e) {
    CHECK(e.code() == "aliasing");
    CHECK(std::string(e.what()).find("Nyquist") != std::string::npos);
  }

  std::vector<double> short_t(8), short_v(8, 1.0);
  for (int i = 0; i < 8; ++i) short_t[i] = i;
  CHECK_THROWS_AS(dft_peak(short_t, short_v, 0.1), Error);

  std::vector<double> warped = t;
  warped[100] += 0.03;
  std::vector<double> v(256);
  for (int i = 0; i < 256; ++i) v[i] = std::sin(warped[i]);
  try {
    dft_peak(warped, v, 0.15);
    FAIL("expected invalid_grid");
  } catch (const Error& e) {
    CHECK(e.code() == "invalid_grid");
  }

  CHECK_THROWS_AS(dft_peak(t, flat, -1.0), Error);
}

}  // TEST_SUITE
