#include <doctest.h>

#include <json.hpp>

#include "cubecat/relations.hpp"

using namespace cubecat;

TEST_CASE("Khovanov relations all hold with sign +1") {
  const RelationReport r = check_relations(builtin_system(SystemKind::Khovanov));
  CHECK(r.all_ok());
  CHECK(r.count_observed(1) == static_cast<int>(r.relations.size()));
  for (const auto& rel : r.relations) CHECK(rel.instances > 0);
}

TEST_CASE("nested system differs only in the torus relation") {
  const RelationReport r = check_relations(builtin_system(SystemKind::Nested));
  CHECK(r.all_ok());
  CHECK(r.count_observed(-1) == 1);
  for (const auto& rel : r.relations)
    if (rel.observed == -1) CHECK(rel.family == "torus");
}

TEST_CASE("odd coassociativity carries a sign") {
  const RelationReport r = check_relations(builtin_system(SystemKind::Odd));
  CHECK(r.all_ok());
  bool seen = false;
  for (const auto& rel : r.relations)
    if (rel.name == "coassociativity") {
      seen = true;
      CHECK(rel.observed == -1);
    }
  CHECK(seen);
  CHECK(nlohmann::json::parse(r.to_json())["system"] == "odd");
}

TEST_CASE("a tuple that breaks a constraint fails the audit") {
  SignParams e;
  e.e[4] = -1;  // e5 without e6
  CHECK_FALSE(relations_hold_up_to_sign(parametrized_system(e).system));
  CHECK(relations_hold_up_to_sign(parametrized_system(SignParams{}).system));
}
