#include "hyperset/vr_events.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "hyperset/errors.hpp"

namespace hyperset::vr {

const char* to_string(EventClass c) { return c == EventClass::Wellfounded ? "Wellfounded" : "NonWellfounded"; }

const char* to_string(Verdict v) { return v == Verdict::StrongVR ? "StrongVR" : "WeakVR"; }

const Event& UniverseRegistry::register_event(std::string name, std::string world_ref, const System& picture) {
    if (find(name) != nullptr) throw DuplicateName(name);
    return register_value(std::move(name), std::move(world_ref), decorate(picture));
}

const Event& UniverseRegistry::register_value(std::string name, std::string world_ref, HyperSet value) {
    if (find(name) != nullptr) throw DuplicateName(name);
    events_.push_back(Event{std::move(name), std::move(world_ref), subject_, value});
    return events_.back();
}

const Event* UniverseRegistry::find(std::string_view name) const {
    auto it = std::find_if(events_.begin(), events_.end(), [&](const Event& e) { return e.name == name; });
    return it == events_.end() ? nullptr : &*it;
}

SecondOrderEvent second_order(const Event& e) { return {e, singleton(e.value)}; }

EventClass classify_event(const Event& e) {
    return is_wellfounded(e.value) ? EventClass::Wellfounded : EventClass::NonWellfounded;
}

Verdict classify_universe(const UniverseRegistry& reg) {
    if (reg.empty()) throw EmptyRegistry();
    const auto& ev = reg.events();
    const bool all_wf = std::all_of(ev.begin(), ev.end(),
                                    [](const Event& e) { return classify_event(e) == EventClass::Wellfounded; });
    return all_wf ? Verdict::StrongVR : Verdict::WeakVR;
}

bool embed_check(const UniverseRegistry& strong, const UniverseRegistry& weak) {
    std::set<HyperSet> values;
    for (const auto& e : weak.events()) values.insert(e.value);
    return std::all_of(strong.events().begin(), strong.events().end(),
                       [&](const Event& e) { return values.count(e.value) > 0; });
}

UniverseRegistry wellfounded_closure(const UniverseRegistry& reg) {
    UniverseRegistry out(reg.subject());
    std::set<HyperSet> seen;
    for (const auto& e : reg.events()) {
        if (classify_event(e) != EventClass::Wellfounded || !seen.insert(e.value).second) continue;
        out.register_value(e.name, e.world_ref, e.value);
    }
    for (const auto& e : reg.events()) {
        if (classify_event(e) != EventClass::Wellfounded) continue;
        std::vector<HyperSet> pending = members(e.value);
        std::size_t k = 0;
        while (!pending.empty()) {
            HyperSet m = pending.back();
            pending.pop_back();
            if (!seen.insert(m).second) continue;
            out.register_value(e.name + "/" + std::to_string(k++), e.world_ref, m);
            for (HyperSet mm : members(m)) pending.push_back(mm);
        }
    }
    return out;
}

namespace {

const nlohmann::json& field(const nlohmann::json& j, const char* name) {
    if (!j.is_object() || !j.contains(name)) throw FormatError(std::string("missing field '") + name + "'");
    return j.at(name);
}

std::string string_field(const nlohmann::json& j, const char* name) {
    const auto& v = field(j, name);
    if (!v.is_string()) throw FormatError(std::string("field '") + name + "' must be a string");
    return v.get<std::string>();
}

}  // namespace

UniverseRegistry registry_from_json(const nlohmann::json& j) {
    UniverseRegistry reg(string_field(j, "subject"));
    const auto& events = field(j, "events");
    if (!events.is_array()) throw FormatError("field 'events' must be an array");
    for (const auto& e : events) {
        reg.register_event(string_field(e, "name"), string_field(e, "world_ref"), system_from_json(field(e, "system")));
    }
    return reg;
}

nlohmann::json to_json(const UniverseRegistry& reg) {
    nlohmann::json events = nlohmann::json::array();
    for (const auto& e : reg.events()) {
        events.push_back({{"name", e.name}, {"world_ref", e.world_ref}, {"system", to_json(e.value.picture())}});
    }
    return {{"subject", reg.subject()}, {"events", std::move(events)}};
}

std::string classification_report(const UniverseRegistry& reg) {
    const Verdict verdict = classify_universe(reg);
    std::ostringstream os;
    os << "subject: " << reg.subject() << "\n";
    for (const auto& e : reg.events()) {
        os << "  " << e.name << " [" << e.world_ref << "]: " << to_string(classify_event(e)) << "\n";
    }
    os << "verdict: " << to_string(verdict) << "\n";
    return os.str();
}

nlohmann::json classification_report_json(const UniverseRegistry& reg) {
    const Verdict verdict = classify_universe(reg);
    nlohmann::json events = nlohmann::json::array();
    for (const auto& e : reg.events()) {
        events.push_back({{"name", e.name}, {"world_ref", e.world_ref}, {"class", to_string(classify_event(e))}});
    }
    return {{"subject", reg.subject()}, {"events", std::move(events)}, {"verdict", to_string(verdict)}};
}

}  // namespace hyperset::vr
