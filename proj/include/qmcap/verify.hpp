#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qmcap::verify {

struct Check {
    std::string name;
    double measured = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct Report {
    std::string suite;
    std::vector<Check> checks;
    bool pass = true;

    void add(const std::string& name, double measured, double tolerance);
    /// For checks of the form "value must be at least bound".
    void add_at_least(const std::string& name, double measured, double bound);
};

/// The numbered identity/property suites. Each is deterministic per seed.
Report criterion(int number, std::uint64_t seed);

/// Named groupings: duality, sphere, heterodyne, depolarizing, capacities,
/// all. Throws std::invalid_argument on unknown names.
std::vector<Report> suite(const std::string& name, std::uint64_t seed);

std::vector<std::string> suite_names();

}  // namespace qmcap::verify
