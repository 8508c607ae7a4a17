#include "hmf/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hmf
{

    void Config::validate() const
    {
        if (precision_bits < 24)
            throw std::invalid_argument("config: precision_bits must be >= 24");
        if (radius <= 0 || bound <= 0 || grid <= 0 || unit_box <= 0)
            throw std::invalid_argument("config: budgets must be positive");
    }

    std::string Config::serialize() const
    {
        std::ostringstream os;
        os << "precision_bits = " << precision_bits << "\n"
           << "radius = " << radius << "\n"
           << "bound = " << bound << "\n"
           << "grid = " << grid << "\n"
           << "unit_box = " << unit_box << "\n"
           << "seed = " << seed << "\n";
        return os.str();
    }

    Config Config::parse(const std::string &text)
    {
        Config c;
        std::istringstream is(text);
        std::string line;
        while (std::getline(is, line))
        {
            auto hash = line.find('#');
            if (hash != std::string::npos)
                line = line.substr(0, hash);
            auto eq = line.find('=');
            if (eq == std::string::npos)
                continue;
            auto trim = [](std::string s)
            {
                size_t b = s.find_first_not_of(" \t\r");
                size_t e = s.find_last_not_of(" \t\r");
                return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
            };
            std::string key = trim(line.substr(0, eq));
            std::string val = trim(line.substr(eq + 1));
            if (key.empty())
                continue;
            if (key == "precision_bits")
                c.precision_bits = static_cast<unsigned>(std::stoul(val));
            else if (key == "radius")
                c.radius = std::stol(val);
            else if (key == "bound")
                c.bound = std::stol(val);
            else if (key == "grid")
                c.grid = std::stol(val);
            else if (key == "unit_box")
                c.unit_box = std::stol(val);
            else if (key == "seed")
                c.seed = std::stoull(val);
            else
                throw std::invalid_argument("config: unknown key '" + key + "'");
        }
        c.validate();
        return c;
    }

    Config Config::load(const std::string &path)
    {
        std::ifstream in(path);
        if (!in)
            throw std::runtime_error("config: cannot open " + path);
        std::ostringstream buf;
        buf << in.rdbuf();
        return parse(buf.str());
    }

    std::string Config::echo() const
    {
        std::ostringstream os;
        os << "precision_bits=" << precision_bits << " radius=" << radius
           << " bound=" << bound << " grid=" << grid
           << " unit_box=" << unit_box << " seed=" << seed;
        return os.str();
    }

} // namespace hmf
