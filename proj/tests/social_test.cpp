#include <algorithm>
#include <sstream>

#include "doctest.h"
#include "railsim/error.hpp"
#include "railsim/geo.hpp"
#include "railsim/population.hpp"
#include "railsim/rng.hpp"
#include "railsim/social.hpp"

using namespace railsim;

namespace {

const GeoPoint kOrigin{1.30, 103.80};

Human person(HumanId id, Category c, int age, GeoPoint home) {
  Human h;
  h.id = id;
  h.category = c;
  h.age_group = age;
  h.home = home;
  return h;
}

}  // namespace

TEST_CASE("similar age") {
  const auto a = person(0, Category::Student, 3, kOrigin);
  auto b = a;
  CHECK(similar_age_influence(a, b) == 1.0);
  auto g1 = person(0, Category::Student, 1, kOrigin);
  auto g6 = person(1, Category::SeniorCitizen, 6, kOrigin);
  CHECK(similar_age_influence(g1, g6) == doctest::Approx(1.0 - 5.0 / 6.0));
  auto g2 = person(0, Category::Student, 2, kOrigin);
  auto g4 = person(1, Category::HomeMaker, 4, kOrigin);
  CHECK(similar_age_influence(g2, g4) == doctest::Approx(1.0 - 2.0 / 6.0));
}

TEST_CASE("similar class") {
  const auto s1 = person(0, Category::Student, 1, kOrigin);
  const auto s2 = person(1, Category::Student, 2, kOrigin);
  const auto hm = person(2, Category::HomeMaker, 3, kOrigin);
  CHECK(similar_class_influence(s1, s2) == 1.0);
  CHECK(similar_class_influence(s1, hm) == 0.0);
}

TEST_CASE("proximity takes the closest shared place") {
  const auto a = person(0, Category::HomeMaker, 3, kOrigin);
  CHECK(proximity(a, a) == 0.0);

  auto w1 = person(0, Category::WorkingProfessional, 3, kOrigin);
  auto w2 = person(1, Category::WorkingProfessional, 3, offset_m(kOrigin, 2000, 0));
  w1.office = offset_m(kOrigin, 0, 10000);
  w2.office = offset_m(*w1.office, 0, 5000);
  CHECK(proximity(w1, w2) == doctest::Approx(2000.0).epsilon(1e-4));

  auto st = person(2, Category::Student, 1, offset_m(kOrigin, 0, 3000));
  st.school = offset_m(kOrigin, 100, 100);
  CHECK(proximity(st, w1) == doctest::Approx(3000.0).epsilon(1e-4));
}

TEST_CASE("proximity influence") {
  CHECK(proximity_influence(2500.0, 2500.0) == 0.0);
  CHECK(proximity_influence(1000.0, 4000.0) == doctest::Approx(0.75));
  CHECK(proximity_influence(0.0, 4000.0) == 1.0);
}

TEST_CASE("influence probability averages the three parts") {
  // 0 follows 1 and 2; 1 is next door, 2 is farther away.
  std::vector<Human> people = {
      person(0, Category::Student, 2, kOrigin),
      person(1, Category::Student, 2, kOrigin),
      person(2, Category::HomeMaker, 2, offset_m(kOrigin, 2000, 0)),
  };
  SUBCASE("all parts one") {
    const SocialGraph g({{1, 2}, {}, {}});
    CHECK(influence_probability(people[1], people[0], people, g) == doctest::Approx(1.0));
  }
  SUBCASE("parts 1, 0 and 0.5") {
    people[1].home = offset_m(kOrigin, 1000, 0);
    people[1].category = Category::HomeMaker;
    const SocialGraph g({{1, 2}, {}, {}});
    CHECK(influence_probability(people[1], people[0], people, g) == doctest::Approx(0.5).epsilon(1e-4));
  }
  SUBCASE("constant model") {
    SocialGraph g({{1, 2}, {0}, {0, 1}});
    g.assign_probabilities(people, InfluenceModel::Constant, 0.5);
    for (HumanId x = 0; x < 3; ++x) {
      for (const auto& link : g.follows(x)) CHECK(link.probability == 0.5);
    }
  }
}

TEST_CASE("degree distribution at the reference size") {
  RngStreams rng(1);
  const DegreeParams params;
  const auto d = sample_degrees(100000, params, rng.stream("degrees"));
  CHECK(*std::min_element(d.begin(), d.end()) == 1);
  CHECK(*std::max_element(d.begin(), d.end()) <= 5000);
  double mean = 0;
  for (int x : d) mean += x;
  mean /= d.size();
  CHECK(std::abs(mean - 500.0) < 25.0);
}

TEST_CASE("two humans follow each other") {
  RngStreams rng(1);
  std::vector<Human> people = {person(0, Category::Student, 1, kOrigin),
                               person(1, Category::Student, 1, kOrigin)};
  const auto g = generate_graph(people, DegreeParams{}.scaled_to(2), rng.stream("graph"));
  REQUIRE(g.follows(0).size() == 1);
  REQUIRE(g.follows(1).size() == 1);
  CHECK(g.follows(0)[0].node == 1);
  CHECK(g.follows(1)[0].node == 0);
}

TEST_CASE("scaled degrees for 5000 humans") {
  const auto params = DegreeParams{}.scaled_to(5000);
  CHECK(params.min == 1);
  CHECK(params.max == 250);
  CHECK(params.mean == 25.0);
  const BoundingBox box{1.25, 103.65, 1.45, 104.0};
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    RngStreams rng(seed);
    const auto people = generate_population(5000, box, {}, rng.stream("population"));
    const auto g = generate_graph(people, params, rng.stream("graph"));
    std::size_t lo = 5000;
    std::size_t hi = 0;
    for (HumanId x = 0; x < 5000; ++x) {
      lo = std::min(lo, g.follows(x).size());
      hi = std::max(hi, g.follows(x).size());
    }
    CHECK(lo >= 1);
    CHECK(hi <= 250);
    CHECK(std::abs(g.edge_count() / 5000.0 - 25.0) < 2.5);
  }
}

TEST_CASE("cascade") {
  RngStreams rng(3);
  std::istringstream edges("1 0 1\n");
  const auto g = SocialGraph::load(edges);
  CHECK(cascade(g, std::vector<HumanId>{}, 0, rng).empty());
  CHECK(cascade(g, std::vector<HumanId>{0}, 0, rng) == std::vector<HumanId>{0, 1});
  // Influence does not flow against the follow direction.
  CHECK(cascade(g, std::vector<HumanId>{1}, 0, rng) == std::vector<HumanId>{1});
}

TEST_CASE("edge list round trip") {
  RngStreams rng(8);
  std::vector<Human> people;
  for (HumanId i = 0; i < 30; ++i) people.push_back(person(i, Category::Student, 1 + i % 3, offset_m(kOrigin, i * 100.0, 0)));
  auto g = generate_graph(people, {1, 5, 3}, rng.stream("graph"));
  g.assign_probabilities(people, InfluenceModel::Similarity);
  std::ostringstream a;
  g.dump(a);
  std::istringstream in(a.str());
  std::ostringstream b;
  SocialGraph::load(in).dump(b);
  CHECK(a.str() == b.str());
}
