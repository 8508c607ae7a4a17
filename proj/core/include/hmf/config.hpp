#pragma once

#include <cstdint>
#include <string>

namespace hmf
{

    /**
     * Run configuration shared by the CLI and the test harnesses.  Every CLI
     * command echoes the active config into its output header so runs are
     * reproducible from the output alone.
     */
    struct Config
    {
        unsigned precision_bits = 128;
        long radius = 12;        // lattice-sum truncation R
        long bound = 10000;      // norm / series bound B
        long grid = 64;          // quadrature grid per axis
        long unit_box = 10000;   // fundamental-unit search box
        std::uint64_t seed = 1;  // seed for randomized commands

        void validate() const; // throws on nonpositive budgets

        // "key = value" lines
        std::string serialize() const;
        static Config parse(const std::string &text);
        static Config load(const std::string &path);

        // single-line echo for output headers
        std::string echo() const;
    };

} // namespace hmf
