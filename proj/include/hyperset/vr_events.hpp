#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hyperset/hyperset.hpp"
#include "hyperset/system.hpp"
#include "json.hpp"

namespace hyperset::vr {

// A named set observed by a subject in some class of worlds.
struct Event {
    std::string name;
    std::string world_ref;
    std::string subject;
    HyperSet value;
};

// The occurrence of an event as an event: its singleton.
struct SecondOrderEvent {
    Event of;
    HyperSet value;
};

enum class EventClass { Wellfounded, NonWellfounded };
enum class Verdict { StrongVR, WeakVR };

const char* to_string(EventClass c);
const char* to_string(Verdict v);

// Events of one subject. Single writer; concurrent readers are fine while
// nobody writes.
class UniverseRegistry {
public:
    explicit UniverseRegistry(std::string subject) : subject_(std::move(subject)) {}

    const std::string& subject() const noexcept { return subject_; }
    const std::vector<Event>& events() const noexcept { return events_; }
    bool empty() const noexcept { return events_.empty(); }

    // Denotes the picture and stores the event. Throws DuplicateName.
    const Event& register_event(std::string name, std::string world_ref, const System& picture);
    const Event& register_value(std::string name, std::string world_ref, HyperSet value);

    const Event* find(std::string_view name) const;

private:
    std::string subject_;
    std::vector<Event> events_;
};

SecondOrderEvent second_order(const Event& e);
EventClass classify_event(const Event& e);

// StrongVR iff every event is wellfounded. Throws EmptyRegistry.
Verdict classify_universe(const UniverseRegistry& reg);

// True iff every value of `strong` is also a value of `weak`.
bool embed_check(const UniverseRegistry& strong, const UniverseRegistry& weak);

// The wellfounded events of reg together with all their transitive members,
// each member registered once as "<event>/<k>".
UniverseRegistry wellfounded_closure(const UniverseRegistry& reg);

// {"subject": ..., "events": [{"name", "world_ref", "system"}]}. Throws
// FormatError on missing or mistyped fields.
UniverseRegistry registry_from_json(const nlohmann::json& j);
nlohmann::json to_json(const UniverseRegistry& reg);

// Per-event tags plus the verdict.
std::string classification_report(const UniverseRegistry& reg);
nlohmann::json classification_report_json(const UniverseRegistry& reg);

}  // namespace hyperset::vr
