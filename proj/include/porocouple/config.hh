#ifndef POROCOUPLE_CONFIG_HH
#define POROCOUPLE_CONFIG_HH

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <porocouple/common.hh>

namespace Porocouple {

//! A required configuration key is not present.
class MissingKey : public ParameterError
{
public:
    explicit MissingKey(const std::string& key)
    : ParameterError("missing required key '" + key + "'"), key_(key)
    {}
    const std::string& key() const { return key_; }
private:
    std::string key_;
};

/*!
 * \brief Flat "section.key = value" configuration with '#' comments.
 */
class Config
{
public:
    Config() = default;

    static Config parse(std::istream& in, const std::string& source = "<input>");
    static Config fromFile(const std::string& path);

    bool has(const std::string& key) const { return values_.count(key) > 0; }
    void set(const std::string& key, const std::string& value) { values_[key] = value; }

    std::string getString(const std::string& key) const;
    std::string getString(const std::string& key, const std::string& fallback) const;
    Scalar getScalar(const std::string& key) const;
    Scalar getScalar(const std::string& key, Scalar fallback) const;
    long getInt(const std::string& key) const;
    long getInt(const std::string& key, long fallback) const;
    bool getBool(const std::string& key, bool fallback) const;
    std::vector<Scalar> getScalars(const std::string& key) const;
    std::vector<Scalar> getScalars(const std::string& key, const std::vector<Scalar>& fallback) const;

    //! directory of the config file, used to resolve relative paths
    const std::string& baseDirectory() const { return baseDirectory_; }
    std::string resolvePath(const std::string& path) const;

    const std::map<std::string, std::string>& values() const { return values_; }

private:
    std::map<std::string, std::string> values_;
    std::string baseDirectory_ = ".";
};

} // end namespace Porocouple

#endif
