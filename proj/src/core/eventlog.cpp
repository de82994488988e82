#include "switchminer/core/eventlog.hpp"

#include <algorithm>
#include <charconv>
#include <iterator>
#include <sstream>
#include <unordered_map>

#include "switchminer/core/error.hpp"
#include "switchminer/core/xml.hpp"

namespace switchminer {

std::string ActivityLabel::display() const {
  switch (kind) {
    case ArtificialKind::Start: return "Start_" + text;
    case ArtificialKind::End: return "End_" + text;
    case ArtificialKind::None: break;
  }
  return text;
}

EventLog EventLog::from_sequences(const std::vector<std::vector<std::string>>& sequences) {
  EventLog log;
  std::size_t n = 0;
  for (const auto& seq : sequences) {
    Trace t;
    t.case_id = "case" + std::to_string(++n);
    t.events.assign(seq.begin(), seq.end());
    log.add(std::move(t));
  }
  return log;
}

std::size_t EventLog::event_count() const {
  std::size_t n = 0;
  for (const auto& t : traces_) n += t.events.size();
  return n;
}

std::set<ActivityLabel> EventLog::alphabet() const {
  std::set<ActivityLabel> out;
  for (const auto& t : traces_) out.insert(t.events.begin(), t.events.end());
  return out;
}

std::map<std::vector<ActivityLabel>, std::size_t> EventLog::variants() const {
  std::map<std::vector<ActivityLabel>, std::size_t> out;
  for (const auto& t : traces_) ++out[t.events];
  return out;
}

// ---------------------------------------------------------------------------
// XES

namespace {

// Direct <string key=".." value=".."/> children only; nested attribute
// children and <global> defaults are ignored.
std::optional<std::string> string_attribute(const xml::Element& e, std::string_view key) {
  for (const auto& c : e.children) {
    if (c->name != "string") continue;
    auto k = c->attribute("key");
    if (k && *k == key) {
      auto v = c->attribute("value");
      return v ? std::string(*v) : std::string();
    }
  }
  return std::nullopt;
}

}  // namespace

ParsedLog parse_xes(std::string_view document, Classifier classifier) {
  auto root = xml::parse(document);
  if (root->name != "log") {
    throw ParseError("XES root element must be <log>, found <" + root->name + ">", root->line);
  }
  ParsedLog result;
  std::size_t n = 0;
  for (const auto* trace_el : root->children_named("trace")) {
    Trace trace;
    ++n;
    trace.case_id = string_attribute(*trace_el, "concept:name").value_or("trace" + std::to_string(n));
    for (const auto* event_el : trace_el->children_named("event")) {
      auto name = string_attribute(*event_el, "concept:name");
      if (!name) {
        ++result.skipped_events;
        continue;
      }
      std::string text = std::move(*name);
      if (classifier == Classifier::NamePlusLifecycle) {
        if (auto life = string_attribute(*event_el, "lifecycle:transition")) text += "+" + *life;
      }
      trace.events.emplace_back(std::move(text));
    }
    result.log.add(std::move(trace));
  }
  return result;
}

ParsedLog parse_xes(std::istream& in, Classifier classifier) {
  std::string content{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return parse_xes(std::string_view(content), classifier);
}

std::string write_xes(const EventLog& log) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\" ?>\n"
      << "<log xes.version=\"1.0\" xes.features=\"\" xmlns=\"http://www.xes-standard.org/\">\n"
      << "  <extension name=\"Concept\" prefix=\"concept\" uri=\"http://www.xes-standard.org/concept.xesext\"/>\n";
  for (const auto& t : log.traces()) {
    out << "  <trace>\n    <string key=\"concept:name\" value=\"" << xml::escape(t.case_id) << "\"/>\n";
    for (const auto& e : t.events) {
      out << "    <event><string key=\"concept:name\" value=\"" << xml::escape(e.display())
          << "\"/></event>\n";
    }
    out << "  </trace>\n";
  }
  out << "</log>\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// CSV

namespace {

struct CsvRow {
  std::vector<std::string> fields;
  std::size_t line = 0;
};

// RFC 4180 reader: quoted fields, doubled quotes, embedded newlines.
class CsvReader {
 public:
  CsvReader(std::istream& in, char delimiter) : in_(in), delimiter_(delimiter) {}

  bool next(CsvRow& row) {
    row.fields.clear();
    row.line = line_;
    std::string field;
    bool quoted = false;
    bool any = false;
    int ch;
    while ((ch = in_.get()) != EOF) {
      any = true;
      const char c = static_cast<char>(ch);
      if (quoted) {
        if (c == '"') {
          if (in_.peek() == '"') {
            in_.get();
            field += '"';
          } else {
            quoted = false;
          }
        } else {
          if (c == '\n') ++line_;
          field += c;
        }
      } else if (c == '"') {
        quoted = true;
      } else if (c == delimiter_) {
        row.fields.push_back(std::move(field));
        field.clear();
      } else if (c == '\r') {
        // swallowed; handles CRLF
      } else if (c == '\n') {
        ++line_;
        row.fields.push_back(std::move(field));
        return true;
      } else {
        field += c;
      }
    }
    if (quoted) throw ParseError("unterminated quoted field starting on line " + std::to_string(row.line), row.line);
    if (!any) return false;
    row.fields.push_back(std::move(field));
    return true;
  }

 private:
  std::istream& in_;
  char delimiter_;
  std::size_t line_ = 1;
};

std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const auto yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

bool read_digits(std::string_view s, std::size_t& pos, std::size_t count, int& out) {
  if (pos + count > s.size()) return false;
  auto [p, ec] = std::from_chars(s.data() + pos, s.data() + pos + count, out);
  if (ec != std::errc() || p != s.data() + pos + count) return false;
  pos += count;
  return true;
}

}  // namespace

// ISO 8601 date-time (date only, or with time, fraction, Z / +hh:mm offset),
// or a plain integer epoch value. Returns microseconds since the epoch.
std::optional<std::int64_t> parse_timestamp(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (s.empty()) return std::nullopt;
  {
    std::int64_t epoch = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), epoch);
    if (ec == std::errc() && p == s.data() + s.size()) return epoch * 1000000;
  }
  std::size_t pos = 0;
  int year, month, day, hour = 0, minute = 0, second = 0;
  if (!read_digits(s, pos, 4, year) || pos >= s.size() || s[pos++] != '-') return std::nullopt;
  if (!read_digits(s, pos, 2, month) || pos >= s.size() || s[pos++] != '-') return std::nullopt;
  if (!read_digits(s, pos, 2, day)) return std::nullopt;
  if (month < 1 || month > 12 || day < 1 || day > 31) return std::nullopt;
  std::int64_t micros = 0;
  std::int64_t offset_minutes = 0;
  if (pos < s.size()) {
    if (s[pos] != 'T' && s[pos] != ' ') return std::nullopt;
    ++pos;
    if (!read_digits(s, pos, 2, hour) || pos >= s.size() || s[pos++] != ':') return std::nullopt;
    if (!read_digits(s, pos, 2, minute)) return std::nullopt;
    if (pos < s.size() && s[pos] == ':') {
      ++pos;
      if (!read_digits(s, pos, 2, second)) return std::nullopt;
      if (pos < s.size() && (s[pos] == '.' || s[pos] == ',')) {
        ++pos;
        std::int64_t scale = 100000;
        const std::size_t start = pos;
        while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
          micros += (s[pos] - '0') * scale;
          scale /= 10;
          ++pos;
        }
        if (pos == start) return std::nullopt;
      }
    }
    if (hour > 23 || minute > 59 || second > 60) return std::nullopt;
    if (pos < s.size()) {
      if (s[pos] == 'Z') {
        ++pos;
      } else if (s[pos] == '+' || s[pos] == '-') {
        const int sign = s[pos] == '-' ? -1 : 1;
        ++pos;
        int oh, om = 0;
        if (!read_digits(s, pos, 2, oh)) return std::nullopt;
        if (pos < s.size() && s[pos] == ':') ++pos;
        if (pos < s.size() && !read_digits(s, pos, 2, om)) return std::nullopt;
        offset_minutes = sign * (oh * 60 + om);
      } else {
        return std::nullopt;
      }
    }
    if (pos != s.size()) return std::nullopt;
  }
  const std::int64_t days = days_from_civil(year, static_cast<unsigned>(month), static_cast<unsigned>(day));
  const std::int64_t secs = days * 86400 + hour * 3600 + minute * 60 + second - offset_minutes * 60;
  return secs * 1000000 + micros;
}

EventLog parse_csv(std::istream& in, const CsvColumns& columns) {
  CsvReader reader(in, columns.delimiter);
  CsvRow header;
  if (!reader.next(header)) throw ConfigError("CSV input is empty; expected a header row");
  auto column_index = [&](const std::string& name) -> std::size_t {
    auto it = std::find(header.fields.begin(), header.fields.end(), name);
    if (it == header.fields.end()) throw ConfigError("CSV header has no column named '" + name + "'");
    return static_cast<std::size_t>(it - header.fields.begin());
  };
  const std::size_t case_idx = column_index(columns.case_column);
  const std::size_t act_idx = column_index(columns.activity_column);
  std::optional<std::size_t> ts_idx;
  if (columns.timestamp_column) ts_idx = column_index(*columns.timestamp_column);

  struct Row {
    std::int64_t time;
    std::size_t order;
    std::string activity;
  };
  std::vector<std::string> case_order;
  std::unordered_map<std::string, std::vector<Row>> cases;
  CsvRow row;
  std::size_t order = 0;
  while (reader.next(row)) {
    if (row.fields.size() == 1 && row.fields[0].empty()) continue;  // blank line
    const std::size_t needed = std::max({case_idx, act_idx, ts_idx.value_or(0)}) + 1;
    if (row.fields.size() < needed) {
      throw ParseError("CSV line " + std::to_string(row.line) + " has " + std::to_string(row.fields.size()) +
                           " fields, expected at least " + std::to_string(needed),
                       row.line);
    }
    std::int64_t time = 0;
    if (ts_idx) {
      auto parsed = parse_timestamp(row.fields[*ts_idx]);
      if (!parsed) {
        throw ParseError("CSV line " + std::to_string(row.line) + ": unparseable timestamp '" +
                             row.fields[*ts_idx] + "'",
                         row.line);
      }
      time = *parsed;
    }
    const std::string& case_id = row.fields[case_idx];
    auto [it, inserted] = cases.try_emplace(case_id);
    if (inserted) case_order.push_back(case_id);
    it->second.push_back({time, order++, row.fields[act_idx]});
  }

  EventLog log;
  for (const auto& case_id : case_order) {
    auto& rows = cases[case_id];
    std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.time < b.time; });
    Trace t;
    t.case_id = case_id;
    for (auto& r : rows) t.events.emplace_back(std::move(r.activity));
    log.add(std::move(t));
  }
  return log;
}

// ---------------------------------------------------------------------------
// Artificial endpoints

EventLog add_artificial_endpoints(const EventLog& log) {
  EventLog out;
  for (const auto& t : log.traces()) {
    Trace copy;
    copy.case_id = t.case_id;
    if (!t.events.empty()) {
      copy.events.reserve(t.events.size() + 2);
      copy.events.push_back(ActivityLabel::start_of(t.events.front()));
      copy.events.insert(copy.events.end(), t.events.begin(), t.events.end());
      copy.events.push_back(ActivityLabel::end_of(t.events.back()));
    }
    out.add(std::move(copy));
  }
  return out;
}

EventLog strip_artificial(const EventLog& log) {
  EventLog out;
  for (const auto& t : log.traces()) {
    Trace copy;
    copy.case_id = t.case_id;
    for (const auto& e : t.events) {
      if (!e.is_artificial()) copy.events.push_back(e);
    }
    out.add(std::move(copy));
  }
  return out;
}

std::size_t count_distinct_activities(std::span<const EventLog> logs) {
  std::set<ActivityLabel> seen;
  for (const auto& log : logs) {
    for (const auto& t : log.traces()) {
      for (const auto& e : t.events) {
        if (!e.is_artificial()) seen.insert(e);
      }
    }
  }
  return seen.size();
}

}  // namespace switchminer
