#include "extract/metadata.hpp"

#include <json.hpp>

#include "extract/content.hpp"
#include "extract/price.hpp"
#include "util/strings.hpp"

namespace adtrace::extract {

namespace {

using nlohmann::json;

const char* kKeys[] = {"name",   "description", "price",          "priceCurrency", "image",
                       "seller", "category",    "productionDate", "availability"};

std::string type_local_name(const std::string& type) {
    size_t pos = type.find_last_of("/#");
    std::string local = pos == std::string::npos ? type : type.substr(pos + 1);
    return util::to_lower(local);
}

bool is_product_or_offer(const json& j) {
    if (!j.is_object() || !j.contains("@type")) return false;
    const json& t = j["@type"];
    auto match = [](const json& v) {
        if (!v.is_string()) return false;
        std::string local = type_local_name(v.get<std::string>());
        return local == "product" || local == "offer" || local == "aggregateoffer";
    };
    if (t.is_string()) return match(t);
    if (t.is_array()) {
        for (const auto& v : t)
            if (match(v)) return true;
    }
    return false;
}

std::string scalar_to_string(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<int64_t>());
    if (v.is_number()) return v.dump();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    return std::string();
}

// Accepts string | array (first usable) | object with url/@id/name.
std::string coerce_ref(const json& v) {
    if (v.is_string() || v.is_number()) return scalar_to_string(v);
    if (v.is_array() && !v.empty()) return coerce_ref(v.front());
    if (v.is_object()) {
        for (const char* k : {"url", "@id", "name"}) {
            if (v.contains(k) && v[k].is_string()) return v[k].get<std::string>();
        }
    }
    return std::string();
}

void put(MetadataEntry& entry, const std::string& key, const std::string& value) {
    std::string trimmed = util::trim(value);
    if (trimmed.empty()) return;
    entry.properties.emplace(key, trimmed);  // first value wins
}

void flatten_offer(const json& offer, MetadataEntry& entry) {
    if (!offer.is_object()) return;
    if (offer.contains("price")) put(entry, "price", scalar_to_string(offer["price"]));
    if (offer.contains("lowPrice") && !entry.properties.count("price"))
        put(entry, "price", scalar_to_string(offer["lowPrice"]));
    if (offer.contains("priceCurrency"))
        put(entry, "priceCurrency", scalar_to_string(offer["priceCurrency"]));
    if (offer.contains("availability")) put(entry, "availability", coerce_ref(offer["availability"]));
    if (offer.contains("seller")) put(entry, "seller", coerce_ref(offer["seller"]));
    if (offer.contains("itemOffered")) put(entry, "name", coerce_ref(offer["itemOffered"]));
}

void flatten_jsonld_object(const json& j, MetadataEntry& entry) {
    if (j.contains("name")) put(entry, "name", coerce_ref(j["name"]));
    if (j.contains("description")) put(entry, "description", coerce_ref(j["description"]));
    if (j.contains("image")) put(entry, "image", coerce_ref(j["image"]));
    if (j.contains("category")) put(entry, "category", coerce_ref(j["category"]));
    if (j.contains("productionDate")) put(entry, "productionDate", coerce_ref(j["productionDate"]));
    if (j.contains("offers")) {
        const json& offers = j["offers"];
        if (offers.is_array() && !offers.empty())
            flatten_offer(offers.front(), entry);
        else
            flatten_offer(offers, entry);
    }
    flatten_offer(j, entry);  // offer-level keys directly on the object
}

// Enforces the entry-level value constraints: price parses as a decimal,
// currency is a 3-letter code.
void validate_entry(MetadataEntry& entry) {
    auto price = entry.properties.find("price");
    if (price != entry.properties.end()) {
        auto amount = util::Decimal::parse(price->second);
        if (!amount || amount->negative()) entry.properties.erase(price);
    }
    auto currency = entry.properties.find("priceCurrency");
    if (currency != entry.properties.end()) {
        auto code = normalize_currency_code(currency->second);
        if (code)
            currency->second = *code;
        else
            entry.properties.erase(currency);
    }
}

void collect_jsonld_value(const json& j, MetadataSet& out) {
    if (j.is_array()) {
        for (const auto& item : j) collect_jsonld_value(item, out);
        return;
    }
    if (!j.is_object()) return;
    if (j.contains("@graph")) collect_jsonld_value(j["@graph"], out);
    if (is_product_or_offer(j)) {
        MetadataEntry entry{MetadataSyntax::JsonLd, {}};
        flatten_jsonld_object(j, entry);
        validate_entry(entry);
        if (!entry.properties.empty()) out.entries.push_back(std::move(entry));
    }
}

void collect_jsonld(const html::Node& root, MetadataSet& out) {
    html::for_each_element(root, [&](const html::Node& n) {
        if (n.tag != "script") return;
        const std::string* type = n.attr("type");
        if (!type || !util::starts_with_ci(util::trim(*type), "application/ld+json")) return;
        std::string body;
        for (const auto& child : n.children)
            if (child->type == html::NodeType::Text) body += child->text;
        json parsed = json::parse(body, nullptr, false);
        if (parsed.is_discarded()) {
            ++out.skipped_jsonld_blocks;
            return;
        }
        collect_jsonld_value(parsed, out);
    });
}

// ---------------------------------------------------------------------------
// Microdata

bool has_product_itemtype(const html::Node& n) {
    const std::string* itemtype = n.attr("itemtype");
    if (!n.attr("itemscope") || !itemtype) return false;
    for (const auto& t : util::split(*itemtype, ' ')) {
        std::string lt = util::to_lower(util::trim(t));
        if (lt.empty()) continue;
        if (lt == "product" || (lt.size() > 8 && lt.substr(lt.size() - 8) == "/product"))
            return true;
    }
    return false;
}

std::string microdata_value(const html::Node& n) {
    auto attr_or_empty = [&](const char* name) {
        const std::string* v = n.attr(name);
        return v ? util::trim(*v) : std::string();
    };
    if (n.tag == "meta") return attr_or_empty("content");
    if (n.tag == "img" || n.tag == "audio" || n.tag == "video" || n.tag == "embed" ||
        n.tag == "iframe" || n.tag == "source" || n.tag == "track")
        return attr_or_empty("src");
    if (n.tag == "a" || n.tag == "area" || n.tag == "link") return attr_or_empty("href");
    if (n.tag == "object") return attr_or_empty("data");
    if (n.tag == "data" || n.tag == "meter") return attr_or_empty("value");
    if (n.tag == "time") {
        std::string dt = attr_or_empty("datetime");
        return dt.empty() ? text_content(n) : dt;
    }
    return text_content(n);
}

void collect_offer_scope(const html::Node& scope, MetadataEntry& entry);

void collect_microdata_props(const html::Node& scope, MetadataEntry& entry, bool in_offer) {
    for (const auto& child : scope.children) {
        if (child->type != html::NodeType::Element) continue;
        const std::string* itemprop = child->attr("itemprop");
        bool nested_scope = child->attr("itemscope") != nullptr;
        if (itemprop) {
            for (const auto& raw_name : util::split(*itemprop, ' ')) {
                std::string prop = util::trim(raw_name);
                if (prop.empty()) continue;
                if (nested_scope) {
                    if (prop == "offers") {
                        collect_offer_scope(*child, entry);
                    } else if (prop == "seller") {
                        MetadataEntry sub{entry.syntax, {}};
                        collect_microdata_props(*child, sub, false);
                        auto name = sub.properties.find("name");
                        if (name != sub.properties.end()) put(entry, "seller", name->second);
                    }
                } else {
                    static const std::map<std::string, std::string> kPropMap = {
                        {"name", "name"},       {"description", "description"},
                        {"image", "image"},     {"category", "category"},
                        {"productionDate", "productionDate"},
                        {"price", "price"},     {"priceCurrency", "priceCurrency"},
                        {"availability", "availability"}, {"seller", "seller"}};
                    auto it = kPropMap.find(prop);
                    if (it != kPropMap.end()) put(entry, it->second, microdata_value(*child));
                }
            }
        }
        if (!nested_scope) collect_microdata_props(*child, entry, in_offer);
    }
}

void collect_offer_scope(const html::Node& scope, MetadataEntry& entry) {
    MetadataEntry offer{entry.syntax, {}};
    collect_microdata_props(scope, offer, true);
    for (const char* key : {"price", "priceCurrency", "availability", "seller"}) {
        auto it = offer.properties.find(key);
        if (it != offer.properties.end()) put(entry, key, it->second);
    }
}

void collect_microdata(const html::Node& root, MetadataSet& out) {
    html::for_each_element(root, [&](const html::Node& n) {
        if (!has_product_itemtype(n)) return;
        MetadataEntry entry{MetadataSyntax::Microdata, {}};
        collect_microdata_props(n, entry, false);
        validate_entry(entry);
        if (!entry.properties.empty()) out.entries.push_back(std::move(entry));
    });
}

// ---------------------------------------------------------------------------
// OpenGraph + RDFa

std::optional<std::string> og_key(const std::string& prop) {
    static const std::map<std::string, std::string> kMap = {
        {"og:title", "name"},
        {"og:description", "description"},
        {"og:image", "image"},
        {"og:image:url", "image"},
        {"og:image:secure_url", "image"},
        {"og:price:amount", "price"},
        {"og:price:currency", "priceCurrency"},
        {"og:availability", "availability"},
        {"product:price:amount", "price"},
        {"product:price:currency", "priceCurrency"},
        {"product:availability", "availability"},
        {"product:category", "category"},
    };
    auto it = kMap.find(util::to_lower(prop));
    if (it == kMap.end()) return std::nullopt;
    return it->second;
}

bool is_og_property(const std::string& prop) {
    std::string p = util::to_lower(prop);
    return p.rfind("og:", 0) == 0 || p.rfind("product:", 0) == 0;
}

void collect_opengraph(const html::Node& root, MetadataSet& out) {
    MetadataEntry entry{MetadataSyntax::OpenGraph, {}};
    html::for_each_element(root, [&](const html::Node& n) {
        if (n.tag != "meta") return;
        const std::string* prop = n.attr("property");
        if (!prop) prop = n.attr("name");
        const std::string* content = n.attr("content");
        if (!prop || !content) return;
        std::string p = util::trim(*prop);
        if (!is_og_property(p)) return;
        if (auto key = og_key(p)) put(entry, *key, *content);
    });
    validate_entry(entry);
    if (!entry.properties.empty()) out.entries.push_back(std::move(entry));
}

void collect_rdfa(const html::Node& root, MetadataSet& out) {
    MetadataEntry entry{MetadataSyntax::Rdfa, {}};
    html::for_each_element(root, [&](const html::Node& n) {
        const std::string* prop = n.attr("property");
        if (!prop) return;
        std::string p = util::trim(*prop);
        if (p.empty() || is_og_property(p)) return;  // OpenGraph handled above
        size_t pos = p.find_last_of(":/#");
        std::string local = util::to_lower(pos == std::string::npos ? p : p.substr(pos + 1));
        static const std::map<std::string, std::string> kLocalMap = {
            {"name", "name"},           {"description", "description"},
            {"price", "price"},         {"pricecurrency", "priceCurrency"},
            {"image", "image"},         {"seller", "seller"},
            {"category", "category"},   {"productiondate", "productionDate"},
            {"availability", "availability"}};
        auto it = kLocalMap.find(local);
        if (it == kLocalMap.end()) return;
        std::string value;
        if (const std::string* content = n.attr("content")) {
            value = *content;
        } else if (n.tag == "a" || n.tag == "link") {
            if (const std::string* href = n.attr("href")) value = *href;
        } else if (n.tag == "img") {
            if (const std::string* src = n.attr("src")) value = *src;
        }
        if (value.empty()) value = text_content(n);
        put(entry, it->second, value);
    });
    validate_entry(entry);
    if (!entry.properties.empty()) out.entries.push_back(std::move(entry));
}

}  // namespace

const char* to_string(MetadataSyntax syntax) {
    switch (syntax) {
        case MetadataSyntax::JsonLd: return "json-ld";
        case MetadataSyntax::Microdata: return "microdata";
        case MetadataSyntax::OpenGraph: return "opengraph";
        case MetadataSyntax::Rdfa: return "rdfa";
    }
    return "unknown";
}

const std::string* MetadataSet::first(const std::string& key) const {
    for (const auto& entry : entries) {
        auto it = entry.properties.find(key);
        if (it != entry.properties.end()) return &it->second;
    }
    return nullptr;
}

MetadataSet extract_embedded_metadata(const html::Node& root) {
    MetadataSet out;
    collect_jsonld(root, out);
    collect_microdata(root, out);
    collect_opengraph(root, out);
    collect_rdfa(root, out);
    return out;
}

}  // namespace adtrace::extract
