#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace switchminer {

enum class ArtificialKind : std::uint8_t { None, Start, End };

// An activity label after classifier resolution. Artificial start/end labels
// live in their own namespace (`kind`), so they can never compare equal to a
// label read from user data, whatever its text.
struct ActivityLabel {
  std::string text;
  ArtificialKind kind = ArtificialKind::None;

  ActivityLabel() = default;
  ActivityLabel(std::string t, ArtificialKind k = ArtificialKind::None)  // NOLINT(implicit)
      : text(std::move(t)), kind(k) {}
  ActivityLabel(const char* t) : text(t) {}  // NOLINT(implicit)

  static ActivityLabel start_of(const ActivityLabel& a) { return {a.text, ArtificialKind::Start}; }
  static ActivityLabel end_of(const ActivityLabel& a) { return {a.text, ArtificialKind::End}; }

  bool is_artificial() const noexcept { return kind != ArtificialKind::None; }

  // Diagnostic rendering: "A", "Start_A", "End_A".
  std::string display() const;

  auto operator<=>(const ActivityLabel&) const = default;
};

using LabelPair = std::pair<ActivityLabel, ActivityLabel>;

struct Trace {
  std::string case_id;
  std::vector<ActivityLabel> events;
};

// Multiset of traces. Order of insertion is kept (it is the file order), but
// equality is multiset equality over the event sequences; case ids are
// informational.
class EventLog {
 public:
  EventLog() = default;
  explicit EventLog(std::vector<Trace> traces) : traces_(std::move(traces)) {}

  // Convenience: {{"A","B"},{"C"}} with generated case ids.
  static EventLog from_sequences(const std::vector<std::vector<std::string>>& sequences);

  void add(Trace trace) { traces_.push_back(std::move(trace)); }

  const std::vector<Trace>& traces() const noexcept { return traces_; }
  std::size_t size() const noexcept { return traces_.size(); }
  bool empty() const noexcept { return traces_.empty(); }
  std::size_t event_count() const;

  std::set<ActivityLabel> alphabet() const;

  // Distinct event sequences with their multiplicities.
  std::map<std::vector<ActivityLabel>, std::size_t> variants() const;

  bool operator==(const EventLog& other) const { return variants() == other.variants(); }

 private:
  std::vector<Trace> traces_;
};

enum class Classifier { Name, NamePlusLifecycle };

struct ParsedLog {
  EventLog log;
  std::size_t skipped_events = 0;  // events without concept:name
};

ParsedLog parse_xes(std::string_view document, Classifier classifier = Classifier::Name);
ParsedLog parse_xes(std::istream& in, Classifier classifier = Classifier::Name);

struct CsvColumns {
  std::string case_column = "case";
  std::string activity_column = "activity";
  std::optional<std::string> timestamp_column;
  char delimiter = ',';
};

EventLog parse_csv(std::istream& in, const CsvColumns& columns);

// ISO 8601 date/date-time (optional fraction and Z/offset) or an integer
// epoch in seconds. Microseconds since the epoch; nullopt when unparseable.
std::optional<std::int64_t> parse_timestamp(std::string_view text);

// Writes the XES subset read by parse_xes: one concept:name per trace/event.
std::string write_xes(const EventLog& log);

// <a,...,z> -> <Start_a, a, ..., z, End_z>. Empty traces are kept as they are.
EventLog add_artificial_endpoints(const EventLog& log);
EventLog strip_artificial(const EventLog& log);

// Distinct non-artificial labels over the union of the logs' alphabets.
std::size_t count_distinct_activities(std::span<const EventLog> logs);
inline std::size_t count_distinct_activities(const EventLog& log) {
  return count_distinct_activities(std::span<const EventLog>(&log, 1));
}

}  // namespace switchminer
