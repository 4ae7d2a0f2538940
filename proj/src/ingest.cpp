#include "magnet/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <unordered_map>

#include "magnet/errors.hpp"

namespace magnet {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

// Splits one CSV line. Double-quoted fields may contain commas and use ""
// escapes; unquoted fields are trimmed.
std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> fields;
    std::string current;
    bool in_quotes = false;
    bool was_quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    current.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                current.push_back(c);
            }
        } else if (c == '"' && trim(current).empty() && !was_quoted) {
            in_quotes = true;
            was_quoted = true;
            current.clear();
        } else if (c == ',') {
            fields.push_back(was_quoted ? current : std::string(trim(current)));
            current.clear();
            was_quoted = false;
        } else {
            current.push_back(c);
        }
    }
    fields.push_back(was_quoted ? current : std::string(trim(current)));
    return fields;
}

// Invokes fn(line_number, line) for every line; strips CR, skips blank lines.
template <typename Fn>
void for_each_line(std::string_view text, Fn fn) {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        ++line_no;
        if (!trim(line).empty()) fn(line_no, line);
        pos = end + 1;
        if (end == text.size()) break;
    }
}

bool parse_u32(std::string_view s, std::uint32_t& out) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

bool parse_double(std::string_view s, double& out) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

bool valid_iata(std::string_view code) {
    return code.size() == 3 && std::all_of(code.begin(), code.end(), [](char c) { return c >= 'A' && c <= 'Z'; });
}

} // namespace

std::uint32_t leg_duration(std::uint32_t dep_minute, std::uint32_t arr_minute) {
    return (arr_minute + kMinutesPerWeek - dep_minute) % kMinutesPerWeek;
}

ParseResult parse_schedule(std::string_view csv) {
    ParseResult result;
    bool header_seen = false;

    for_each_line(csv, [&](std::size_t line_no, std::string_view line) {
        if (!header_seen) {
            if (trim(line) != kScheduleHeader) {
                throw ParseError("schedule header mismatch at line " + std::to_string(line_no) + ": expected '" +
                                 std::string(kScheduleHeader) + "', got '" + std::string(trim(line)) + "'");
            }
            header_seen = true;
            return;
        }

        auto bad = [&](const std::string& why) { result.diagnostics.push_back({line_no, why}); };

        std::vector<std::string> f = split_csv_line(line);
        if (f.size() != 7) {
            bad("expected 7 fields, got " + std::to_string(f.size()));
            return;
        }
        ScheduleRecord r;
        r.airline = f[0];
        r.flight_number = f[1];
        r.origin = f[2];
        r.destination = f[3];
        if (r.airline.empty()) return bad("empty airline code");
        if (r.flight_number.empty()) return bad("empty flight number");
        if (!valid_iata(r.origin)) return bad("invalid origin code '" + r.origin + "'");
        if (!valid_iata(r.destination)) return bad("invalid destination code '" + r.destination + "'");
        if (r.origin == r.destination) return bad("origin equals destination ('" + r.origin + "')");
        if (!parse_u32(f[4], r.dep_minute) || r.dep_minute >= kMinutesPerWeek)
            return bad("dep_minute '" + f[4] + "' not in 0..10079");
        if (!parse_u32(f[5], r.arr_minute) || r.arr_minute >= kMinutesPerWeek)
            return bad("arr_minute '" + f[5] + "' not in 0..10079");
        if (!parse_u32(f[6], r.period) || r.period == 0) return bad("period '" + f[6] + "' not a positive integer");
        const std::uint32_t duration = leg_duration(r.dep_minute, r.arr_minute);
        if (duration == 0 || duration > kMaxLegMinutes)
            return bad("leg duration " + std::to_string(duration) + " min outside (0, 1440]");
        result.records.push_back(std::move(r));
    });

    if (!header_seen) {
        throw ParseError("schedule file is empty: header row required");
    }
    return result;
}

AirportRegistry AirportRegistry::parse(std::string_view csv) {
    AirportRegistry registry;
    bool header_seen = false;

    for_each_line(csv, [&](std::size_t line_no, std::string_view line) {
        if (!header_seen) {
            if (trim(line) != kHeader) {
                throw ParseError("airport registry header mismatch at line " + std::to_string(line_no) +
                                 ": expected '" + std::string(kHeader) + "'");
            }
            header_seen = true;
            return;
        }
        std::vector<std::string> f = split_csv_line(line);
        if (f.size() != 4) {
            throw ParseError("airport registry line " + std::to_string(line_no) + ": expected 4 fields, got " +
                             std::to_string(f.size()));
        }
        AirportInfo info;
        info.name = f[1];
        if (!valid_iata(f[0])) {
            throw ParseError("airport registry line " + std::to_string(line_no) + ": invalid code '" + f[0] + "'");
        }
        if (!parse_double(f[2], info.latitude) || info.latitude < -90.0 || info.latitude > 90.0) {
            throw ParseError("airport registry line " + std::to_string(line_no) + ": bad latitude '" + f[2] + "'");
        }
        if (!parse_double(f[3], info.longitude) || info.longitude < -180.0 || info.longitude > 180.0) {
            throw ParseError("airport registry line " + std::to_string(line_no) + ": bad longitude '" + f[3] + "'");
        }
        if (registry.contains(f[0])) {
            throw ParseError("airport registry line " + std::to_string(line_no) + ": duplicate code '" + f[0] + "'");
        }
        registry.add(std::move(f[0]), std::move(info));
    });

    if (!header_seen) {
        throw ParseError("airport registry file is empty: header row required");
    }
    return registry;
}

void AirportRegistry::add(std::string iata, AirportInfo info) {
    if (!valid_iata(iata)) {
        throw ParseError("invalid airport code '" + iata + "'");
    }
    if (info.latitude < -90.0 || info.latitude > 90.0 || info.longitude < -180.0 || info.longitude > 180.0) {
        throw ParseError("coordinates out of range for airport '" + iata + "'");
    }
    airports_[std::move(iata)] = std::move(info);
}

const AirportInfo* AirportRegistry::find(std::string_view iata) const {
    auto it = airports_.find(iata);
    return it == airports_.end() ? nullptr : &it->second;
}

std::vector<std::string> AirportRegistry::codes() const {
    std::vector<std::string> out;
    out.reserve(airports_.size());
    for (const auto& [code, info] : airports_) out.push_back(code);
    std::sort(out.begin(), out.end());
    return out;
}

void BuildConfig::validate() const {
    if (min_connect_minutes == 0 || min_connect_minutes > max_connect_minutes) {
        throw Error("connection window must satisfy 0 < min <= max (got " + std::to_string(min_connect_minutes) +
                    ".." + std::to_string(max_connect_minutes) + ")");
    }
}

namespace {

struct FlightEvent {
    std::uint32_t minute = 0;
    std::string airline;
    std::string flight_number;

    friend auto operator<=>(const FlightEvent&, const FlightEvent&) = default;
};

bool airline_selected(const BuildConfig& config, const std::string& airline) {
    return !config.airlines_filter || config.airlines_filter->contains(airline);
}

} // namespace

std::vector<ConnectionEdge> synthesize_connections(std::span<const ScheduleRecord> records,
                                                   const BuildConfig& config) {
    config.validate();

    struct Group {
        std::vector<FlightEvent> arrivals;
        std::vector<FlightEvent> departures;
    };
    std::map<std::pair<std::string, std::uint32_t>, Group> groups; // (airport, period)

    for (const ScheduleRecord& r : records) {
        if (!airline_selected(config, r.airline)) continue;
        groups[{r.destination, r.period}].arrivals.push_back({r.arr_minute, r.airline, r.flight_number});
        groups[{r.origin, r.period}].departures.push_back({r.dep_minute, r.airline, r.flight_number});
    }

    std::vector<ConnectionEdge> out;
    for (auto& [key, group] : groups) {
        std::sort(group.arrivals.begin(), group.arrivals.end());
        std::sort(group.departures.begin(), group.departures.end());
        for (const FlightEvent& arr : group.arrivals) {
            for (const FlightEvent& dep : group.departures) {
                if (!config.cross_airline_connections && arr.airline != dep.airline) continue;
                const std::uint32_t gap = (dep.minute + kMinutesPerWeek - arr.minute) % kMinutesPerWeek;
                if (gap < config.min_connect_minutes || gap > config.max_connect_minutes) continue;
                out.push_back(ConnectionEdge{key.first, arr.airline, dep.airline, arr.minute, dep.minute, key.second,
                                             arr.flight_number, dep.flight_number});
            }
        }
    }
    return out;
}

BuildResult build_mag(std::span<const ScheduleRecord> records, const BuildConfig& config,
                      const AirportRegistry& airports) {
    config.validate();

    BuildResult result;
    std::vector<ScheduleRecord> valid;
    valid.reserve(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        const ScheduleRecord& r = records[i];
        if (!airline_selected(config, r.airline)) continue;
        const bool origin_known = airports.contains(r.origin);
        const bool destination_known = airports.contains(r.destination);
        if (!origin_known || !destination_known) {
            result.diagnostics.push_back(
                {i + 1, "record " + std::to_string(i + 1) + " (" + r.airline + " " + r.flight_number +
                            "): unknown airport '" + (origin_known ? r.destination : r.origin) + "', dropped"});
            continue;
        }
        valid.push_back(r);
    }
    if (valid.empty()) {
        throw EmptyInputError("no valid schedule records to build from");
    }

    std::set<std::string> airport_codes;
    std::set<std::string> airline_codes;
    std::set<std::uint32_t> minutes;
    std::set<std::uint32_t> periods;
    for (const ScheduleRecord& r : valid) {
        airport_codes.insert(r.origin);
        airport_codes.insert(r.destination);
        airline_codes.insert(r.airline);
        minutes.insert(r.dep_minute);
        minutes.insert(r.arr_minute);
        periods.insert(r.period);
    }

    Aspect airport_aspect{std::string(kAirportAspect), {airport_codes.begin(), airport_codes.end()}};
    Aspect layer_aspect{std::string(kLayerAspect), {}};
    for (const std::string& airline : airline_codes) {
        layer_aspect.elements.push_back(flight_layer(airline));
        layer_aspect.elements.push_back(connection_layer(airline));
    }
    Aspect minute_aspect{std::string(kMinuteAspect), {}};
    std::unordered_map<std::uint32_t, std::uint32_t> minute_index;
    for (std::uint32_t m : minutes) {
        minute_index.emplace(m, static_cast<std::uint32_t>(minute_aspect.elements.size()));
        minute_aspect.elements.push_back(std::to_string(m));
    }
    Aspect period_aspect{std::string(kPeriodAspect), {}};
    std::unordered_map<std::uint32_t, std::uint32_t> period_index;
    for (std::uint32_t p : periods) {
        period_index.emplace(p, static_cast<std::uint32_t>(period_aspect.elements.size()));
        period_aspect.elements.push_back(std::to_string(p));
    }

    AspectSchema schema({airport_aspect, layer_aspect, minute_aspect, period_aspect});
    MagBuilder builder{schema};

    auto airport_at = [&](const std::string& code) { return *schema.element_index(0, code); };
    auto layer_at = [&](const std::string& label) { return *schema.element_index(1, label); };

    for (const ScheduleRecord& r : valid) {
        const std::uint32_t layer = layer_at(flight_layer(r.airline));
        CompositeVertex from{{airport_at(r.origin), layer, minute_index.at(r.dep_minute), period_index.at(r.period)}};
        CompositeVertex to{
            {airport_at(r.destination), layer, minute_index.at(r.arr_minute), period_index.at(r.period)}};
        builder.add_edge(from, to, 1, {{"flight", r.flight_number}});
    }

    for (const ConnectionEdge& c : synthesize_connections(valid, config)) {
        const std::uint32_t airport = airport_at(c.airport);
        const std::uint32_t layer = layer_at(connection_layer(c.arr_airline));
        CompositeVertex from{{airport, layer, minute_index.at(c.arr_minute), period_index.at(c.period)}};
        CompositeVertex to{{airport, layer, minute_index.at(c.dep_minute), period_index.at(c.period)}};
        EdgeTags tags{{"from_flight", c.from_flight}, {"to_flight", c.to_flight}};
        if (c.dep_airline != c.arr_airline) {
            tags.emplace_back("to_airline", c.dep_airline);
        }
        builder.add_edge(from, to, 1, std::move(tags));
    }

    result.mag = std::move(builder).freeze();
    return result;
}

} // namespace magnet
