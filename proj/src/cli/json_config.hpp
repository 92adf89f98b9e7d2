#pragma once

#include <algorithm>
#include <istream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

namespace helix::cli {

/// CLI11 config reader for JSON files mirroring the flag namespace. Top-level keys are root
/// flags; an object value addresses the subcommand of that name. Keys may use '-' or '_'.
class JsonConfig : public CLI::Config {
  public:
    std::string to_config(const CLI::App *app, bool default_also, bool, std::string) const override {
        nlohmann::json j = nlohmann::json::object();
        for (const CLI::Option *opt : app->get_options()) {
            if (!opt->get_configurable() || opt->get_lnames().empty()) {
                continue;
            }
            const std::string &name = opt->get_lnames().front();
            if (opt->count() > 0) {
                const auto &results = opt->results();
                j[name] = results.size() == 1 ? nlohmann::json(results.front()) : nlohmann::json(results);
            } else if (default_also && !opt->get_default_str().empty()) {
                j[name] = opt->get_default_str();
            }
        }
        for (const CLI::App *sub : app->get_subcommands({})) {
            const std::string nested = to_config(sub, default_also, false, "");
            const auto parsed = nlohmann::json::parse(nested);
            if (!parsed.empty()) {
                j[sub->get_name()] = parsed;
            }
        }
        return j.dump(2) + "\n";
    }

    std::vector<CLI::ConfigItem> from_config(std::istream &input) const override {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(input);
        } catch (const nlohmann::json::exception &e) {
            throw CLI::ConversionError(std::string("config file is not valid JSON: ") + e.what());
        }
        if (!j.is_object()) {
            throw CLI::ConversionError("config file must hold a JSON object");
        }
        std::vector<CLI::ConfigItem> items;
        walk(j, {}, items);
        return items;
    }

  private:
    static std::string flag_name(std::string key) {
        std::replace(key.begin(), key.end(), '_', '-');
        return key;
    }

    static std::string scalar(const nlohmann::json &v) {
        if (v.is_string()) {
            return v.get<std::string>();
        }
        if (v.is_boolean()) {
            return v.get<bool>() ? "true" : "false";
        }
        if (v.is_number()) {
            return v.dump();
        }
        throw CLI::ConversionError("config values must be strings, numbers, booleans or arrays of those");
    }

    static void walk(const nlohmann::json &j, const std::vector<std::string> &parents,
                     std::vector<CLI::ConfigItem> &items) {
        for (const auto &[key, value] : j.items()) {
            if (value.is_object()) {
                auto nested = parents;
                nested.push_back(key);
                walk(value, nested, items);
                continue;
            }
            CLI::ConfigItem item;
            item.parents = parents;
            item.name = flag_name(key);
            if (value.is_array()) {
                for (const auto &v : value) {
                    item.inputs.push_back(scalar(v));
                }
            } else {
                item.inputs.push_back(scalar(value));
            }
            items.push_back(std::move(item));
        }
    }
};

} // namespace helix::cli
