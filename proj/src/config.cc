#include <porocouple/config.hh>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace Porocouple {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

Scalar toScalar(const std::string& key, const std::string& text)
{
    std::size_t pos = 0;
    Scalar v;
    try {
        v = std::stod(text, &pos);
    }
    catch (const std::exception&) {
        throw ParameterError("key '" + key + "': '" + text + "' is not a number");
    }
    if (trim(text.substr(pos)) != "")
        throw ParameterError("key '" + key + "': '" + text + "' is not a number");
    return v;
}

} // end anonymous namespace

Config Config::parse(std::istream& in, const std::string& source)
{
    Config config;
    std::string line;
    int lineNumber = 0;
    while (std::getline(in, line))
    {
        ++lineNumber;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParameterError(source + ":" + std::to_string(lineNumber) + ": expected 'key = value'");
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (key.empty() || key.find_first_of(" \t") != std::string::npos)
            throw ParameterError(source + ":" + std::to_string(lineNumber) + ": invalid key '" + key + "'");
        if (config.values_.count(key))
            throw ParameterError(source + ":" + std::to_string(lineNumber) + ": duplicate key '" + key + "'");
        config.values_[key] = value;
    }
    return config;
}

Config Config::fromFile(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParameterError("cannot open config file '" + path + "'");
    Config config = parse(in, path);
    const auto parent = std::filesystem::path(path).parent_path();
    config.baseDirectory_ = parent.empty() ? "." : parent.string();
    return config;
}

std::string Config::resolvePath(const std::string& path) const
{
    std::filesystem::path p(path);
    if (p.is_absolute())
        return p.string();
    return (std::filesystem::path(baseDirectory_) / p).string();
}

std::string Config::getString(const std::string& key) const
{
    auto it = values_.find(key);
    if (it == values_.end())
        throw MissingKey(key);
    return it->second;
}

std::string Config::getString(const std::string& key, const std::string& fallback) const
{ return has(key) ? getString(key) : fallback; }

Scalar Config::getScalar(const std::string& key) const
{ return toScalar(key, getString(key)); }

Scalar Config::getScalar(const std::string& key, Scalar fallback) const
{ return has(key) ? getScalar(key) : fallback; }

long Config::getInt(const std::string& key) const
{
    const Scalar v = getScalar(key);
    if (v != static_cast<Scalar>(static_cast<long>(v)))
        throw ParameterError("key '" + key + "' must be an integer");
    return static_cast<long>(v);
}

long Config::getInt(const std::string& key, long fallback) const
{ return has(key) ? getInt(key) : fallback; }

bool Config::getBool(const std::string& key, bool fallback) const
{
    if (!has(key))
        return fallback;
    const auto v = getString(key);
    if (v == "true" || v == "1" || v == "yes" || v == "on")
        return true;
    if (v == "false" || v == "0" || v == "no" || v == "off")
        return false;
    throw ParameterError("key '" + key + "': '" + v + "' is not a boolean");
}

std::vector<Scalar> Config::getScalars(const std::string& key) const
{
    std::istringstream in(getString(key));
    std::vector<Scalar> result;
    std::string token;
    while (in >> token)
    {
        if (token.back() == ',')
            token.pop_back();
        if (!token.empty())
            result.push_back(toScalar(key, token));
    }
    return result;
}

std::vector<Scalar> Config::getScalars(const std::string& key, const std::vector<Scalar>& fallback) const
{ return has(key) ? getScalars(key) : fallback; }

} // end namespace Porocouple
