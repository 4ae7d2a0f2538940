#ifndef MAGNET_INGEST_HPP
#define MAGNET_INGEST_HPP

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "magnet/mag.hpp"

namespace magnet {

inline constexpr std::uint32_t kMinutesPerWeek = 10080;
inline constexpr std::uint32_t kMaxLegMinutes = 1440;

// Aspect names of a schedule-built Mag, in schema order.
inline constexpr std::string_view kAirportAspect = "airport";
inline constexpr std::string_view kLayerAspect = "layer";
inline constexpr std::string_view kMinuteAspect = "minute";
inline constexpr std::string_view kPeriodAspect = "period";

inline constexpr std::string_view kFlightLayerSuffix = "-flight";
inline constexpr std::string_view kConnectionLayerSuffix = "-connection";

inline std::string flight_layer(std::string_view airline) {
    return std::string(airline) + std::string(kFlightLayerSuffix);
}
inline std::string connection_layer(std::string_view airline) {
    return std::string(airline) + std::string(kConnectionLayerSuffix);
}

// One scheduled flight leg. Minutes are minute-of-week values (0..10079);
// arrival may wrap numerically past the week end, but the modular duration
// must lie in (0, 1440].
struct ScheduleRecord {
    std::string airline;
    std::string flight_number;
    std::string origin;
    std::string destination;
    std::uint32_t dep_minute = 0;
    std::uint32_t arr_minute = 0;
    std::uint32_t period = 1;

    friend bool operator==(const ScheduleRecord&, const ScheduleRecord&) = default;
};

// Leg duration in minutes, modulo the week.
std::uint32_t leg_duration(std::uint32_t dep_minute, std::uint32_t arr_minute);

struct Diagnostic {
    std::size_t line = 0; // 1-based input line for parse issues, record ordinal otherwise
    std::string message;
};

struct ParseResult {
    std::vector<ScheduleRecord> records;
    std::vector<Diagnostic> diagnostics;
};

inline constexpr std::string_view kScheduleHeader =
    "airline,flight_number,origin,destination,dep_minute,arr_minute,period";

// Parses canonical schedule CSV. The header row must match kScheduleHeader;
// a malformed header is a hard ParseError. Invalid rows are skipped with a
// diagnostic; valid rows come back in input order.
ParseResult parse_schedule(std::string_view csv);

struct AirportInfo {
    std::string name;
    double latitude = 0.0;
    double longitude = 0.0;
};

// IATA code -> name and coordinates, used for geo-referenced exports.
class AirportRegistry {
public:
    inline static constexpr std::string_view kHeader = "iata,name,lat,lon";

    // Parses registry CSV (header `iata,name,lat,lon`). Any invalid row is a
    // hard ParseError: the registry is curated reference data.
    static AirportRegistry parse(std::string_view csv);

    void add(std::string iata, AirportInfo info);

    const AirportInfo* find(std::string_view iata) const;
    bool contains(std::string_view iata) const { return find(iata) != nullptr; }
    std::size_t size() const { return airports_.size(); }

    std::vector<std::string> codes() const; // sorted

private:
    StringMap<AirportInfo> airports_;
};

// Connection-layer synthesis bounds and airline scoping.
struct BuildConfig {
    std::uint32_t min_connect_minutes = 30;
    std::uint32_t max_connect_minutes = 360;
    bool cross_airline_connections = false;
    std::optional<std::set<std::string>> airlines_filter;

    void validate() const; // 0 < min <= max
};

// A feasible transfer: an arrival event followed by a departure event at the
// same airport within the configured gap window.
struct ConnectionEdge {
    std::string airport;
    std::string arr_airline;
    std::string dep_airline;
    std::uint32_t arr_minute = 0;
    std::uint32_t dep_minute = 0;
    std::uint32_t period = 1;
    std::string from_flight;
    std::string to_flight;

    friend bool operator==(const ConnectionEdge&, const ConnectionEdge&) = default;
};

// Pairs every arrival at an airport with every departure from it in the same
// period (same airline unless cross_airline_connections) whose gap satisfies
// min <= (dep - arr) mod 10080 <= max. Output order is canonical: airport,
// period, then arrival and departure times.
std::vector<ConnectionEdge> synthesize_connections(std::span<const ScheduleRecord> records,
                                                   const BuildConfig& config);

struct BuildResult {
    Mag mag;
    std::vector<Diagnostic> diagnostics; // dropped records (unknown airports)
};

// Builds the four-aspect Mag: airports x airline layers x minute-of-week x
// period. Every record becomes one flight-layer edge tagged with its flight
// number; connection edges live in the airline's connection layer. Records
// naming airports absent from the registry are dropped with a diagnostic.
// Throws EmptyInputError when no valid records remain.
BuildResult build_mag(std::span<const ScheduleRecord> records, const BuildConfig& config,
                      const AirportRegistry& airports);

} // namespace magnet

#endif // MAGNET_INGEST_HPP
