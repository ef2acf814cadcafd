#include "radstruct/prompts.hpp"

#include "radstruct/errors.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "radstruct_assets.inc"

namespace radstruct {

const std::array<std::string_view, 8>& redundant_phrases() {
    static const std::array<std::string_view, 8> phrases = {
        "there is",      "of the",    "within the", "visualized",
        "measures",      "approximately", "the patient", "at this time",
    };
    return phrases;
}

namespace {

const char* kStageAssetIds[] = {
    "s_structure",
    "s_then_c_structure",
    "s_then_c_condense",
    "c_then_s_condense",
    "c_then_s_structure",
    "s_plus_c_combined",
    "s_plus_c_fi_findings",
    "s_plus_c_fi_impressions",
};

constexpr const char* kFixAssetId = "fix";

}  // namespace

const PromptSet& PromptSet::v1() {
    static const PromptSet set = [] {
        PromptSet s;
        s.version_ = "v1";
        s.assets_["s_structure"] = std::string(assets::kPromptV1SStructure);
        s.assets_["s_then_c_structure"] = std::string(assets::kPromptV1SThenCStructure);
        s.assets_["s_then_c_condense"] = std::string(assets::kPromptV1SThenCCondense);
        s.assets_["c_then_s_condense"] = std::string(assets::kPromptV1CThenSCondense);
        s.assets_["c_then_s_structure"] = std::string(assets::kPromptV1CThenSStructure);
        s.assets_["s_plus_c_combined"] = std::string(assets::kPromptV1SPlusCCombined);
        s.assets_["s_plus_c_fi_findings"] = std::string(assets::kPromptV1SPlusCFiFindings);
        s.assets_["s_plus_c_fi_impressions"] = std::string(assets::kPromptV1SPlusCFiImpressions);
        s.assets_["fix"] = std::string(assets::kPromptV1Fix);
        return s;
    }();
    return set;
}

PromptSet PromptSet::load_dir(const std::string& dir, std::string version) {
    PromptSet set;
    set.version_ = std::move(version);
    for (const char* id : kStageAssetIds) {
        std::filesystem::path path = std::filesystem::path(dir) / (std::string(id) + ".txt");
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw ConfigError("prompt set '" + set.version_ + "': missing asset " + path.string());
        std::stringstream buffer;
        buffer << in.rdbuf();
        set.assets_[id] = buffer.str();
    }
    std::filesystem::path fix_path = std::filesystem::path(dir) / "fix.txt";
    std::ifstream fix_in(fix_path, std::ios::binary);
    if (!fix_in)
        throw ConfigError("prompt set '" + set.version_ + "': missing asset " + fix_path.string());
    std::stringstream fix_buffer;
    fix_buffer << fix_in.rdbuf();
    set.assets_[kFixAssetId] = fix_buffer.str();
    return set;
}

PromptSet PromptSet::resolve(const std::string& version, const std::string& assets_dir) {
    std::filesystem::path dir = std::filesystem::path(assets_dir) / "prompts" / version;
    std::error_code ec;
    if (std::filesystem::is_directory(dir, ec)) return load_dir(dir.string(), version);
    if (version == "v1") return v1();
    throw ConfigError("unknown prompt version '" + version + "' (no directory at " + dir.string() +
                      ")");
}

const std::string& PromptSet::get(const std::string& asset_id) const {
    auto it = assets_.find(asset_id);
    if (it == assets_.end())
        throw ConfigError("prompt set '" + version_ + "' has no asset '" + asset_id + "'");
    return it->second;
}

bool PromptSet::has(const std::string& asset_id) const { return assets_.count(asset_id) != 0; }

std::string substitute_placeholders(std::string_view text,
                                    const std::map<std::string, std::string>& values) {
    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        if (text[i] == '{') {
            std::size_t close = text.find('}', i + 1);
            if (close != std::string_view::npos) {
                std::string key(text.substr(i + 1, close - i - 1));
                auto it = values.find(key);
                if (it != values.end()) {
                    out += it->second;
                    i = close + 1;
                    continue;
                }
            }
        }
        out.push_back(text[i]);
        ++i;
    }
    return out;
}

void validate_prompt_set(const PromptSet& prompts) {
    auto require = [&](const std::string& id, std::string_view needle, const char* what) {
        const std::string& text = prompts.get(id);
        if (text.empty())
            throw ConfigError("prompt asset '" + id + "' (version " + prompts.version() +
                              ") is empty");
        if (text.find(needle) == std::string::npos)
            throw ConfigError("prompt asset '" + id + "' (version " + prompts.version() +
                              ") lacks " + what);
    };

    for (const char* id : kStageAssetIds) require(id, "{report}", "the {report} placeholder");

    for (const char* id : {"s_structure", "s_then_c_structure", "c_then_s_structure",
                           "s_plus_c_combined", "s_plus_c_fi_findings", "s_plus_c_fi_impressions"})
        require(id, "{template}", "the {template} placeholder");

    for (const char* id : {"s_then_c_condense", "c_then_s_condense", "s_plus_c_combined",
                           "s_plus_c_fi_findings", "s_plus_c_fi_impressions"}) {
        for (std::string_view phrase : redundant_phrases())
            require(id, phrase, ("the removal phrase '" + std::string(phrase) + "'").c_str());
    }

    require("fix", "{bad_output}", "the {bad_output} placeholder");
    require("fix", "{instructions}", "the {instructions} placeholder");
}

}  // namespace radstruct
