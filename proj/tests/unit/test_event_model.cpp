#include <gtest/gtest.h>

#include <sstream>

#include "pitchmotif/errors.hpp"
#include "pitchmotif/event_model.hpp"

namespace pitchmotif {
namespace {

const std::string kHeader = std::string(kEventCsvHeader) + "\n";

std::vector<PassEvent> parse_csv(const std::string& text) {
  std::istringstream in(text);
  return parse_events(in, EventFormat::Csv);
}

PassEvent pass(const std::string& team, double t0, double t1,
               std::optional<std::string> possession = std::nullopt) {
  PassEvent e;
  e.game_id = "g1";
  e.team_id = team;
  e.t_start = t0;
  e.t_end = t1;
  e.passer_id = "p1";
  e.receiver_id = "p2";
  e.possession_id = std::move(possession);
  return e;
}

TEST(ParseEvents, MapsCsvRow) {
  const auto events = parse_csv(kHeader + "g1,home,1,10.0,11.2,50,34,60,30,p7,p9,,true\n");
  ASSERT_EQ(events.size(), 1u);
  const auto& e = events[0];
  EXPECT_EQ(e.game_id, "g1");
  EXPECT_EQ(e.team_id, "home");
  EXPECT_EQ(e.period, 1);
  EXPECT_EQ(e.t_start, 10.0);
  EXPECT_EQ(e.t_end, 11.2);
  EXPECT_EQ(e.x_start, 50);
  EXPECT_EQ(e.y_start, 34);
  EXPECT_EQ(e.x_end, 60);
  EXPECT_EQ(e.y_end, 30);
  EXPECT_EQ(e.passer_id, "p7");
  EXPECT_EQ(e.receiver_id, "p9");
  EXPECT_FALSE(e.possession_id.has_value());
  EXPECT_TRUE(e.completed);
}

TEST(ParseEvents, NonNumericCoordinateNamesTheRecord) {
  try {
    parse_csv(kHeader + "g1,home,1,10,11,50,34,60,30,p7,p9,,true\n" +
              "g1,home,1,12,13,abc,34,60,30,p7,p9,,true\n");
    FAIL() << "expected ValueError";
  } catch (const ValueError& e) {
    EXPECT_EQ(e.record(), 3u);
  }
}

TEST(ParseEvents, EmptyInputGivesNoEvents) {
  EXPECT_TRUE(parse_csv("").empty());
  EXPECT_TRUE(parse_csv(kHeader).empty());
}

TEST(ParseEvents, MissingColumnIsSchemaError) {
  try {
    parse_csv("game_id,team_id\ng1,home\n");
    FAIL() << "expected SchemaError";
  } catch (const SchemaError& e) {
    EXPECT_EQ(e.record(), 1u);
  }
}

TEST(ParseEvents, EndBeforeStartIsValueError) {
  EXPECT_THROW(parse_csv(kHeader + "g1,home,1,12,11,50,34,60,30,p7,p9,,true\n"), ValueError);
}

TEST(ParseEvents, JsonRecordsUseIndices) {
  std::istringstream ok(R"([{"game_id":"g1","team_id":"home","period":1,"t_start":10,"t_end":11.2,
    "x_start":50,"y_start":34,"x_end":60,"y_end":30,"passer_id":"p7","receiver_id":"p9",
    "possession_id":null,"completed":true}])");
  const auto events = parse_events(ok, EventFormat::Json);
  ASSERT_EQ(events.size(), 1u);
  EXPECT_EQ(events[0].receiver_id, "p9");

  std::istringstream bad(R"([{"game_id":"g1","team_id":"home","period":1,"t_start":10,"t_end":11.2,
    "x_start":"abc","y_start":34,"x_end":60,"y_end":30,"passer_id":"p7","receiver_id":"p9",
    "possession_id":null,"completed":true}])");
  try {
    parse_events(bad, EventFormat::Json);
    FAIL() << "expected ValueError";
  } catch (const ValueError& e) {
    EXPECT_EQ(e.record(), 0u);
  }
}

TEST(ParseEvents, CsvRoundTripIsByteStable) {
  const std::string text = kHeader +
                           "g1,home,1,10,11.2,50,34,60,30,p7,p9,,true\n"
                           "g1,home,1,12.5,13,60,30,70.25,20,p9,,P1,false\n";
  const auto events = parse_csv(text);
  std::ostringstream out;
  write_events_csv(out, events);
  EXPECT_EQ(out.str(), text);
  EXPECT_EQ(parse_csv(out.str()), events);
}

TEST(BuildPossessions, TeamChangeBreaks) {
  const std::vector<PassEvent> events{pass("A", 0, 1), pass("A", 4, 5), pass("B", 6, 7)};
  const auto seqs = build_possessions(events, {});
  ASSERT_EQ(seqs.size(), 2u);
  EXPECT_EQ(seqs[0].passes.size(), 2u);
  EXPECT_EQ(seqs[1].passes.size(), 1u);
  EXPECT_EQ(seqs[0].seq_id, "g1/A/000");
  EXPECT_EQ(seqs[1].seq_id, "g1/B/000");
}

TEST(BuildPossessions, GapBreaks) {
  const std::vector<PassEvent> events{pass("A", 0, 1), pass("A", 21, 22)};
  const auto seqs = build_possessions(events, {});
  ASSERT_EQ(seqs.size(), 2u);
  EXPECT_EQ(seqs[0].passes.size(), 1u);
  EXPECT_EQ(seqs[1].seq_id, "g1/A/001");
}

TEST(BuildPossessions, PossessionIdBreaks) {
  const std::vector<PassEvent> events{pass("A", 0, 1, "P1"), pass("A", 2, 3, "P1"),
                                      pass("A", 4, 5, "P2")};
  const auto seqs = build_possessions(events, {});
  ASSERT_EQ(seqs.size(), 2u);
  EXPECT_EQ(seqs[0].passes.size(), 2u);
  EXPECT_EQ(seqs[1].passes.size(), 1u);

  SegmentationPolicy ignore_ids;
  ignore_ids.use_provided_possession_id = false;
  EXPECT_EQ(build_possessions(events, ignore_ids).size(), 1u);
}

TEST(BuildPossessions, PeriodAndIncompletePassBreak) {
  auto second = pass("A", 8, 9);
  second.period = 2;
  auto lost = pass("A", 4, 5);
  lost.completed = false;
  lost.receiver_id.reset();
  const std::vector<PassEvent> events{pass("A", 0, 1), second, lost, pass("A", 6, 7)};
  // t0 | lost | t6 | period 2
  const auto seqs = build_possessions(events, {});
  ASSERT_EQ(seqs.size(), 3u);
  EXPECT_EQ(seqs[2].passes[0].period, 2);

  SegmentationPolicy keep_periods;
  keep_periods.break_on_period = false;
  EXPECT_EQ(build_possessions(events, keep_periods).size(), 2u);
}

TEST(BuildPossessions, ConcatenationRecoversCompletedPasses) {
  std::vector<PassEvent> events;
  for (int k = 0; k < 30; ++k) {
    auto e = pass(k % 7 < 4 ? "A" : "B", 3.0 * k, 3.0 * k + 1.0);
    e.completed = k % 5 != 4;
    if (!e.completed) e.receiver_id.reset();
    events.push_back(e);
  }
  std::vector<PassEvent> flat;
  for (const auto& s : build_possessions(events, {})) {
    for (const auto& e : s.passes) {
      EXPECT_EQ(e.team_id, s.team_id);
      EXPECT_EQ(e.game_id, s.game_id);
      flat.push_back(e);
    }
  }
  std::vector<PassEvent> expected;
  for (const auto& e : events) {
    if (e.completed) expected.push_back(e);
  }
  EXPECT_EQ(flat, expected);
}

TEST(BuildPossessions, EmptyInput) { EXPECT_TRUE(build_possessions({}, {}).empty()); }

}  // namespace
}  // namespace pitchmotif
