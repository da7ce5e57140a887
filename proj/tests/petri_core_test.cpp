#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "reconet/errors.hpp"
#include "reconet/matrix.hpp"
#include "reconet/net.hpp"
#include "reconet/semantics.hpp"
#include "test_support.hpp"

using namespace reconet;
using test_support::Counts;

namespace {

// The non-functional change net: five state places, four guarded one-shot
// transitions out of PS.
Net state_change_net() {
  NetBuilder b;
  b.place("PS").place("PS'A").place("PS'R").place("PS'C").place("PS'Re");
  b.transition("TA", TokenLabel{"A"});
  b.transition("TR", TokenLabel{"R"});
  b.transition("TC", TokenLabel{"C"});
  b.transition("TRe", TokenLabel{"Re"});
  b.arc("PS", "TA").arc("TA", "PS'A");
  b.arc("PS", "TR").arc("TR", "PS'R");
  b.arc("PS", "TC").arc("TC", "PS'C");
  b.arc("PS", "TRe").arc("TRe", "PS'Re");
  b.input("PS").output("PS");
  return b.build();
}

Marking four_token_marking() {
  Marking m;
  m.add("PS", "A");
  m.add("PS", "R");
  m.add("PS", "C");
  m.add("PS", "Re");
  return m;
}

}  // namespace

TEST_CASE("marking is canonical: zero counts vanish") {
  Marking m;
  m.add("p", "A", 2);
  m.remove("p", "A", 2);
  CHECK(m == Marking{});
  CHECK(m.count("p") == 0);
  CHECK(m.bag("missing").empty());
}

TEST_CASE("marking remove underflow throws") {
  Marking m;
  m.add("p", "A");
  CHECK_THROWS_AS(m.remove("p", "A", 2), NegativeResult);
  CHECK_THROWS_AS(m.remove("p", "B"), NegativeResult);
}

TEST_CASE("marking remove_any takes smallest labels first") {
  Marking m;
  m.add("p", "B", 1);
  m.add("p", "A", 1);
  m.add("p", "C", 3);
  auto removed = m.remove_any("p", 3);
  CHECK(removed == Marking::Bag{{"A", 1}, {"B", 1}, {"C", 1}});
  CHECK(m.count("p", "C") == 2);
}

TEST_CASE("marking transfer_all moves the whole bag") {
  Marking m;
  m.add("a", "A", 2);
  m.add("b", "A", 1);
  m.transfer_all("a", "b");
  CHECK(m.count("a") == 0);
  CHECK(m.count("b", "A") == 3);
  CHECK(m.label_totals() == Marking::Bag{{"A", 3}});
}

TEST_CASE("state-change net builds with the expected shape") {
  Net net = state_change_net();
  CHECK(net.places().size() == 5);
  CHECK(net.transitions().size() == 4);
  CHECK(net.arcs().size() == 8);
  CHECK(net.input_place() == "PS");
  CHECK(net.alphabet().count("A") == 1);
  CHECK(net.alphabet().count(kPlainLabel) == 1);  // implicit
}

TEST_CASE("build rejects overlapping place and transition ids") {
  NetBuilder b;
  b.place("a").transition("a").input("a").output("a");
  CHECK_THROWS_AS(b.build(), StructuralError);
}

TEST_CASE("build rejects place-to-place arcs") {
  NetBuilder b;
  b.place("p").place("q").transition("t");
  b.arc("p", "q");
  b.input("p").output("q");
  CHECK_THROWS_AS(b.build(), StructuralError);
}

TEST_CASE("build rejects the empty net") {
  CHECK_THROWS_AS(NetBuilder{}.build(), StructuralError);
}

TEST_CASE("build rejects dangling arc endpoints") {
  NetBuilder b;
  b.place("p").transition("t").arc("p", "nowhere").input("p").output("p");
  CHECK_THROWS_AS(b.build(), StructuralError);
}

TEST_CASE("build rejects non-positive weights") {
  NetBuilder b;
  b.place("p").transition("t").arc("p", "t", 0).input("p").output("p");
  CHECK_THROWS_AS(b.build(), StructuralError);
}

TEST_CASE("build rejects missing interface places") {
  NetBuilder b;
  b.place("p").transition("t").arc("p", "t");
  b.input("p").output("q");
  CHECK_THROWS_AS(b.build(), StructuralError);
  NetBuilder c;
  c.place("p");
  CHECK_THROWS_AS(c.build(), StructuralError);  // input never set
}

TEST_CASE("build rejects duplicate arcs and whitespace ids") {
  NetBuilder b;
  b.place("p").transition("t").arc("p", "t").arc("p", "t");
  b.input("p").output("p");
  CHECK_THROWS_AS(b.build(), StructuralError);
  NetBuilder c;
  c.place("a b").input("a b").output("a b");
  CHECK_THROWS_AS(c.build(), StructuralError);
}

TEST_CASE("enabled checks guard labels") {
  Net net = state_change_net();
  Marking m = four_token_marking();
  CHECK(enabled(net, m, "TA"));
  Marking after = fire(net, m, "TA");
  CHECK_FALSE(enabled(net, after, "TA"));
  CHECK(enabled(net, after, "TR"));
  CHECK_FALSE(enabled(net, Marking{}, "TA"));
  CHECK_THROWS_AS(enabled(net, m, "TX"), UnknownTransition);
}

TEST_CASE("fire moves the matching token") {
  Net net = state_change_net();
  Marking m = four_token_marking();
  Marking after = fire(net, m, "TA");
  CHECK(after.count("PS") == 3);
  CHECK(after.count("PS", "A") == 0);
  CHECK(after.count("PS'A", "A") == 1);
  // purity: the input marking is untouched and refiring matches exactly
  CHECK(m.count("PS") == 4);
  CHECK(fire(net, m, "TA") == after);
}

TEST_CASE("fire reports the blocking place") {
  Net net = state_change_net();
  Marking empty;
  try {
    fire(net, empty, "TA");
    FAIL("expected NotEnabled");
  } catch (const NotEnabled& e) {
    CHECK(e.transition == "TA");
    CHECK(e.blocking_place == "PS");
  }
}

TEST_CASE("weighted output arcs multiply produced tokens") {
  NetBuilder b;
  b.place("p").place("q").transition("t");
  b.arc("p", "t").arc("t", "q", 2);
  b.input("p").output("q");
  Net net = b.build();
  Marking m;
  m.add("p", kPlainLabel);
  Marking after = fire(net, m, "t");
  CHECK(after.count("q", kPlainLabel) == 2);
  CHECK(after.count("p") == 0);
}

TEST_CASE("unguarded firing drains mixed labels smallest-first, emits plain") {
  NetBuilder b;
  b.place("p").place("q").transition("t");
  b.arc("p", "t", 2).arc("t", "q");
  b.input("p").output("q");
  b.label("A");
  Net net = b.build();
  Marking m;
  m.add("p", "A");
  m.add("p", kPlainLabel);
  REQUIRE(enabled(net, m, "t"));
  Marking after = fire(net, m, "t");
  CHECK(after.count("p") == 0);
  CHECK(after.count("q", kPlainLabel) == 1);
}

TEST_CASE("fire_sequence folds and reports the failing step") {
  Net net = state_change_net();
  Marking m = four_token_marking();

  CHECK(fire_sequence(net, m, {}) == m);

  std::vector<std::string> ok = {"TA", "TRe"};
  Marking after = fire_sequence(net, m, ok);
  CHECK(after.count("PS") == 2);
  CHECK(after.count("PS'A", "A") == 1);
  CHECK(after.count("PS'Re", "Re") == 1);

  std::vector<std::string> repeat = {"TA", "TA"};
  try {
    fire_sequence(net, m, repeat);
    FAIL("expected NotEnabled");
  } catch (const NotEnabled& e) {
    CHECK(e.step == 1);
  }
}

TEST_CASE("incidence matrix of the state-change net") {
  Net net = state_change_net();
  IncidenceMatrix matrix = incidence_matrix(net);
  auto column = matrix.column("TA");
  const auto& places = matrix.place_ids();
  REQUIRE(places.size() == 5);
  for (std::size_t i = 0; i < places.size(); ++i) {
    if (places[i] == "PS") {
      CHECK(column[i] == -1);
    } else if (places[i] == "PS'A") {
      CHECK(column[i] == 1);
    } else {
      CHECK(column[i] == 0);
    }
  }
  CHECK_THROWS_AS(matrix.column("TX"), UnknownTransition);
}

TEST_CASE("incidence matrix of an arcless net is zero") {
  NetBuilder b;
  b.place("p").transition("t").input("p").output("p");
  IncidenceMatrix matrix = incidence_matrix(b.build());
  CHECK(matrix.pre(0, 0) == 0);
  CHECK(matrix.post(0, 0) == 0);
  CHECK(matrix.delta(0, 0) == 0);
}

TEST_CASE("self-loop cancels in C but not in Pre/Post") {
  NetBuilder b;
  b.place("p").transition("t").arc("p", "t").arc("t", "p");
  b.input("p").output("p");
  IncidenceMatrix matrix = incidence_matrix(b.build());
  CHECK(matrix.pre(0, 0) == 1);
  CHECK(matrix.post(0, 0) == 1);
  CHECK(matrix.delta(0, 0) == 0);
}

TEST_CASE("state equation reproduces a single firing") {
  Net net = state_change_net();
  IncidenceMatrix matrix = incidence_matrix(net);
  Marking m;
  m.add("PS", kPlainLabel, 4);
  Marking after = state_equation(m, matrix, {{"TA", 1}});
  CHECK(after.count("PS") == 3);
  CHECK(after.count("PS'A") == 1);

  CHECK(state_equation(m, matrix, {}) == m);
  CHECK_THROWS_AS(state_equation(m, matrix, {{"TA", 9}}), NegativeResult);
  CHECK_THROWS_AS(state_equation(m, matrix, {{"TX", 1}}), DimensionMismatch);
  CHECK_THROWS_AS(state_equation(m, matrix, {{"TA", -1}}), DimensionMismatch);
  Marking bad;
  bad.add("nowhere", kPlainLabel);
  CHECK_THROWS_AS(state_equation(bad, matrix, {}), DimensionMismatch);
}

TEST_CASE("guarded firing never disturbs other labels") {
  Net net = state_change_net();
  Marking m = four_token_marking();
  m.add("PS", kPlainLabel, 2);  // extra bystander tokens
  Marking after = fire(net, m, "TC");
  for (const auto& label : {"A", "R", "Re"}) {
    CHECK(after.total(label) == m.total(label));
  }
  CHECK(after.total(kPlainLabel) == m.total(kPlainLabel));
  CHECK(after.total("C") == m.total("C"));  // moved, not created
}

TEST_CASE("project keeps the induced subnet") {
  Net net = state_change_net();
  Net sub = project(net, {"PS", "PS'A", "PS'Re"}, {"TA", "TRe"});
  CHECK(sub.places().size() == 3);
  CHECK(sub.transitions().size() == 2);
  CHECK(sub.arcs().size() == 4);
  CHECK_THROWS_AS(project(net, {"PS'A"}, {}), StructuralError);  // loses p_in
  CHECK_THROWS_AS(project(net, {"PS", "nope"}, {}), UnknownPlace);
}

TEST_CASE("property: random structural violations are rejected") {
  std::mt19937_64 rng(7);
  int rejected = 0;
  for (int i = 0; i < 200; ++i) {
    NetBuilder b;
    b.place("p0").place("p1").transition("t0");
    b.arc("p0", "t0").arc("t0", "p1");
    b.input("p0").output("p1");
    switch (test_support::pick(rng, 5)) {
      case 0:
        b.transition("p0");  // id overlap
        break;
      case 1:
        b.arc("p0", "p1");  // place-to-place
        break;
      case 2:
        b.arc("p0", "ghost");  // dangling
        break;
      case 3:
        b.arc("p1", "t0", -1 - static_cast<int>(test_support::pick(rng, 3)));
        break;
      default:
        b.input("ghost");
        break;
    }
    try {
      b.build();
    } catch (const StructuralError&) {
      ++rejected;
    }
  }
  CHECK(rejected == 200);
}

TEST_CASE("property: firing conserves the token balance") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    Net net = test_support::random_plain_net(rng);
    Counts counts = test_support::random_counts(rng, net);
    Marking m = test_support::to_plain_marking(counts);
    for (const auto& t : enabled_transitions(net, m)) {
      int in_weight = 0;
      int out_weight = 0;
      for (const auto& [p, w] : net.inputs_of(t)) in_weight += w;
      for (const auto& [p, w] : net.outputs_of(t)) out_weight += w;
      Marking after = fire(net, m, t);
      CHECK(after.total() == m.total() - in_weight + out_weight);
    }
  }
}

TEST_CASE("property: fire agrees with the naive oracle and state equation") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 120; ++i) {
    Net net = test_support::random_plain_net(rng);
    Counts initial = test_support::random_counts(rng, net);
    auto sequence =
        test_support::random_admissible_sequence(rng, net, initial, 8);

    Counts expected = initial;
    std::map<std::string, int> firing_counts;
    for (const auto& t : sequence) {
      REQUIRE(test_support::naive_enabled(net, expected, t));
      expected = test_support::naive_fire(net, expected, t);
      firing_counts[t] += 1;
    }

    Marking m0 = test_support::to_plain_marking(initial);
    Marking simulated = fire_sequence(net, m0, sequence);
    CHECK(test_support::to_counts(simulated) == [&] {
      Counts trimmed;
      for (const auto& [p, n] : expected) {
        if (n > 0) trimmed[p] = n;
      }
      return trimmed;
    }());

    Marking predicted =
        state_equation(m0, incidence_matrix(net), firing_counts);
    CHECK(predicted == simulated);
  }
}
