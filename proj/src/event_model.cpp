#include "pitchmotif/event_model.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "pitchmotif/errors.hpp"
#include "util/format.hpp"

namespace pitchmotif {

namespace {

using nlohmann::json;

constexpr std::array<const char*, 13> kColumns = {
    "game_id", "team_id",   "period",    "t_start",       "t_end",
    "x_start", "y_start",   "x_end",     "y_end",         "passer_id",
    "receiver_id", "possession_id", "completed"};

enum Col : std::size_t {
  kGame, kTeam, kPeriod, kTStart, kTEnd, kXStart, kYStart, kXEnd, kYEnd,
  kPasser, kReceiver, kPossession, kCompleted
};

double parse_number(std::string_view text, std::size_t record, const char* column) {
  text = util::trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ValueError(record, std::string("non-numeric ") + column + " '" + std::string(text) + "'");
  }
  if (!std::isfinite(v)) throw ValueError(record, std::string("non-finite ") + column);
  return v;
}

int parse_period(std::string_view text, std::size_t record) {
  text = util::trim(text);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size() || v < 1) {
    throw ValueError(record, "invalid period '" + std::string(text) + "'");
  }
  return v;
}

bool parse_bool(std::string_view text, std::size_t record) {
  text = util::trim(text);
  if (text == "true" || text == "TRUE" || text == "True" || text == "1") return true;
  if (text == "false" || text == "FALSE" || text == "False" || text == "0") return false;
  throw ValueError(record, "invalid completed flag '" + std::string(text) + "'");
}

std::optional<std::string> optional_id(std::string_view text) {
  text = util::trim(text);
  if (text.empty()) return std::nullopt;
  return std::string(text);
}

void validate_event(const PassEvent& e, std::size_t record) {
  if (e.game_id.empty()) throw ValueError(record, "empty game_id");
  if (e.team_id.empty()) throw ValueError(record, "empty team_id");
  if (e.t_start < 0.0) throw ValueError(record, "negative t_start");
  if (e.t_end < e.t_start) throw ValueError(record, "t_end < t_start");
  if (!e.completed && e.receiver_id) {
    throw ValueError(record, "incomplete pass must not name a receiver");
  }
}

std::vector<PassEvent> parse_csv(std::istream& in) {
  std::vector<PassEvent> events;
  std::string line;
  std::size_t line_no = 0;

  std::array<std::size_t, kColumns.size()> index{};
  bool have_header = false;
  std::size_t n_fields = 0;

  while (std::getline(in, line)) {
    ++line_no;
    const auto content = util::trim(line);
    if (content.empty()) continue;
    const auto fields = util::split(content, ',');

    if (!have_header) {
      std::unordered_map<std::string, std::size_t> pos;
      for (std::size_t k = 0; k < fields.size(); ++k) pos[std::string(util::trim(fields[k]))] = k;
      for (std::size_t c = 0; c < kColumns.size(); ++c) {
        const auto it = pos.find(kColumns[c]);
        if (it == pos.end()) throw SchemaError(line_no, std::string("missing column ") + kColumns[c]);
        index[c] = it->second;
      }
      if (pos.size() != kColumns.size() || fields.size() != kColumns.size()) {
        throw SchemaError(line_no, "header must list exactly the documented columns");
      }
      n_fields = fields.size();
      have_header = true;
      continue;
    }

    if (fields.size() != n_fields) {
      throw SchemaError(line_no, "expected " + std::to_string(n_fields) + " fields, got " +
                                     std::to_string(fields.size()));
    }
    auto f = [&](Col c) { return fields[index[c]]; };

    PassEvent e;
    e.game_id = std::string(util::trim(f(kGame)));
    e.team_id = std::string(util::trim(f(kTeam)));
    e.period = parse_period(f(kPeriod), line_no);
    e.t_start = parse_number(f(kTStart), line_no, "t_start");
    e.t_end = parse_number(f(kTEnd), line_no, "t_end");
    e.x_start = parse_number(f(kXStart), line_no, "x_start");
    e.y_start = parse_number(f(kYStart), line_no, "y_start");
    e.x_end = parse_number(f(kXEnd), line_no, "x_end");
    e.y_end = parse_number(f(kYEnd), line_no, "y_end");
    e.passer_id = std::string(util::trim(f(kPasser)));
    e.receiver_id = optional_id(f(kReceiver));
    e.possession_id = optional_id(f(kPossession));
    e.completed = parse_bool(f(kCompleted), line_no);
    validate_event(e, line_no);
    events.push_back(std::move(e));
  }
  return events;
}

double json_number(const json& obj, const char* key, std::size_t record) {
  const auto& v = obj.at(key);
  if (v.is_number()) {
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ValueError(record, std::string("non-finite ") + key);
    return d;
  }
  if (v.is_string()) return parse_number(v.get_ref<const std::string&>(), record, key);
  throw ValueError(record, std::string("non-numeric ") + key);
}

std::string json_id(const json& obj, const char* key, std::size_t record) {
  const auto& v = obj.at(key);
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw ValueError(record, std::string("invalid ") + key);
}

std::optional<std::string> json_optional_id(const json& obj, const char* key, std::size_t record) {
  const auto& v = obj.at(key);
  if (v.is_null()) return std::nullopt;
  auto s = json_id(obj, key, record);
  if (s.empty()) return std::nullopt;
  return s;
}

std::vector<PassEvent> parse_json(std::istream& in) {
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  if (util::trim(text).empty()) return {};

  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& ex) {
    throw SchemaError(0, std::string("invalid JSON: ") + ex.what());
  }
  if (!doc.is_array()) throw SchemaError(0, "top-level JSON value must be an array");

  std::vector<PassEvent> events;
  events.reserve(doc.size());
  for (std::size_t k = 0; k < doc.size(); ++k) {
    const auto& obj = doc[k];
    if (!obj.is_object()) throw SchemaError(k, "record is not an object");
    for (const char* col : kColumns) {
      if (!obj.contains(col)) throw SchemaError(k, std::string("missing column ") + col);
    }
    PassEvent e;
    e.game_id = json_id(obj, "game_id", k);
    e.team_id = json_id(obj, "team_id", k);
    const auto& period = obj.at("period");
    if (period.is_number_integer()) {
      e.period = period.get<int>();
      if (e.period < 1) throw ValueError(k, "invalid period");
    } else if (period.is_string()) {
      e.period = parse_period(period.get_ref<const std::string&>(), k);
    } else {
      throw ValueError(k, "invalid period");
    }
    e.t_start = json_number(obj, "t_start", k);
    e.t_end = json_number(obj, "t_end", k);
    e.x_start = json_number(obj, "x_start", k);
    e.y_start = json_number(obj, "y_start", k);
    e.x_end = json_number(obj, "x_end", k);
    e.y_end = json_number(obj, "y_end", k);
    e.passer_id = json_id(obj, "passer_id", k);
    e.receiver_id = json_optional_id(obj, "receiver_id", k);
    e.possession_id = json_optional_id(obj, "possession_id", k);
    const auto& completed = obj.at("completed");
    if (completed.is_boolean()) {
      e.completed = completed.get<bool>();
    } else if (completed.is_string()) {
      e.completed = parse_bool(completed.get_ref<const std::string&>(), k);
    } else {
      throw ValueError(k, "invalid completed flag");
    }
    validate_event(e, k);
    events.push_back(std::move(e));
  }
  return events;
}

}  // namespace

void SegmentationPolicy::validate() const {
  if (!(max_gap_seconds > 0.0)) throw ConfigError("segmentation.max_gap_seconds must be > 0");
}

std::vector<PassEvent> parse_events(std::istream& in, EventFormat format) {
  return format == EventFormat::Json ? parse_json(in) : parse_csv(in);
}

std::vector<PassEvent> read_events_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open input file " + path.string());
  const auto ext = path.extension().string();
  return parse_events(in, ext == ".json" ? EventFormat::Json : EventFormat::Csv);
}

void write_events_csv(std::ostream& out, std::span<const PassEvent> events) {
  out << kEventCsvHeader << '\n';
  for (const auto& e : events) {
    out << e.game_id << ',' << e.team_id << ',' << e.period << ',' << util::format_double(e.t_start)
        << ',' << util::format_double(e.t_end) << ',' << util::format_double(e.x_start) << ','
        << util::format_double(e.y_start) << ',' << util::format_double(e.x_end) << ','
        << util::format_double(e.y_end) << ',' << e.passer_id << ','
        << e.receiver_id.value_or("") << ',' << e.possession_id.value_or("") << ','
        << (e.completed ? "true" : "false") << '\n';
  }
}

std::string make_seq_id(const std::string& game_id, const std::string& team_id,
                        std::size_t ordinal) {
  std::string n = std::to_string(ordinal);
  if (n.size() < 3) n.insert(0, 3 - n.size(), '0');
  return game_id + "/" + team_id + "/" + n;
}

std::vector<PossessionSequence> build_possessions(std::span<const PassEvent> events,
                                                  const SegmentationPolicy& policy) {
  policy.validate();

  // Games in order of first appearance, each stably sorted by (period, t_start).
  std::vector<std::string> game_order;
  std::map<std::string, std::vector<const PassEvent*>> by_game;
  for (const auto& e : events) {
    auto [it, inserted] = by_game.try_emplace(e.game_id);
    if (inserted) game_order.push_back(e.game_id);
    it->second.push_back(&e);
  }

  std::vector<PossessionSequence> out;
  for (const auto& game : game_order) {
    auto& list = by_game[game];
    std::stable_sort(list.begin(), list.end(), [](const PassEvent* a, const PassEvent* b) {
      if (a->period != b->period) return a->period < b->period;
      return a->t_start < b->t_start;
    });

    std::map<std::string, std::size_t> ordinal;  // per team
    PossessionSequence current;
    auto close = [&] {
      if (current.passes.empty()) return;
      out.push_back(std::move(current));
      current = PossessionSequence{};
    };

    for (const PassEvent* e : list) {
      if (!e->completed) {
        close();
        continue;
      }
      if (!current.passes.empty()) {
        const PassEvent& prev = current.passes.back();
        const bool breaks =
            prev.team_id != e->team_id ||
            (policy.break_on_period && prev.period != e->period) ||
            (policy.use_provided_possession_id && prev.possession_id != e->possession_id) ||
            e->t_start - prev.t_end > policy.max_gap_seconds ||
            e->t_start < prev.t_end;
        if (breaks) close();
      }
      if (current.passes.empty()) {
        current.game_id = e->game_id;
        current.team_id = e->team_id;
        current.seq_id = make_seq_id(e->game_id, e->team_id, ordinal[e->team_id]++);
      }
      current.passes.push_back(*e);
    }
    close();
  }
  return out;
}

}  // namespace pitchmotif
