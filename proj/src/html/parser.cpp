#include "html/parser.hpp"

#include <array>
#include <cctype>
#include <cstdint>
#include <unordered_map>
#include <unordered_set>

#include "util/strings.hpp"

namespace adtrace::html {

namespace {

// ---------------------------------------------------------------------------
// Character references

const std::unordered_map<std::string, uint32_t>& entity_table() {
    static const std::unordered_map<std::string, uint32_t> table = {
        {"amp", '&'}, {"lt", '<'}, {"gt", '>'}, {"quot", '"'}, {"apos", '\''},
        // Latin-1 block
        {"nbsp", 160}, {"iexcl", 161}, {"cent", 162}, {"pound", 163}, {"curren", 164},
        {"yen", 165}, {"brvbar", 166}, {"sect", 167}, {"uml", 168}, {"copy", 169},
        {"ordf", 170}, {"laquo", 171}, {"not", 172}, {"shy", 173}, {"reg", 174},
        {"macr", 175}, {"deg", 176}, {"plusmn", 177}, {"sup2", 178}, {"sup3", 179},
        {"acute", 180}, {"micro", 181}, {"para", 182}, {"middot", 183}, {"cedil", 184},
        {"sup1", 185}, {"ordm", 186}, {"raquo", 187}, {"frac14", 188}, {"frac12", 189},
        {"frac34", 190}, {"iquest", 191}, {"Agrave", 192}, {"Aacute", 193}, {"Acirc", 194},
        {"Atilde", 195}, {"Auml", 196}, {"Aring", 197}, {"AElig", 198}, {"Ccedil", 199},
        {"Egrave", 200}, {"Eacute", 201}, {"Ecirc", 202}, {"Euml", 203}, {"Igrave", 204},
        {"Iacute", 205}, {"Icirc", 206}, {"Iuml", 207}, {"ETH", 208}, {"Ntilde", 209},
        {"Ograve", 210}, {"Oacute", 211}, {"Ocirc", 212}, {"Otilde", 213}, {"Ouml", 214},
        {"times", 215}, {"Oslash", 216}, {"Ugrave", 217}, {"Uacute", 218}, {"Ucirc", 219},
        {"Uuml", 220}, {"Yacute", 221}, {"THORN", 222}, {"szlig", 223}, {"agrave", 224},
        {"aacute", 225}, {"acirc", 226}, {"atilde", 227}, {"auml", 228}, {"aring", 229},
        {"aelig", 230}, {"ccedil", 231}, {"egrave", 232}, {"eacute", 233}, {"ecirc", 234},
        {"euml", 235}, {"igrave", 236}, {"iacute", 237}, {"icirc", 238}, {"iuml", 239},
        {"eth", 240}, {"ntilde", 241}, {"ograve", 242}, {"oacute", 243}, {"ocirc", 244},
        {"otilde", 245}, {"ouml", 246}, {"divide", 247}, {"oslash", 248}, {"ugrave", 249},
        {"uacute", 250}, {"ucirc", 251}, {"uuml", 252}, {"yacute", 253}, {"thorn", 254},
        {"yuml", 255},
        // Typography and currency
        {"euro", 8364}, {"trade", 8482}, {"hellip", 8230}, {"mdash", 8212}, {"ndash", 8211},
        {"lsquo", 8216}, {"rsquo", 8217}, {"ldquo", 8220}, {"rdquo", 8221}, {"sbquo", 8218},
        {"bdquo", 8222}, {"dagger", 8224}, {"Dagger", 8225}, {"bull", 8226}, {"permil", 8240},
        {"prime", 8242}, {"Prime", 8243}, {"lsaquo", 8249}, {"rsaquo", 8250}, {"minus", 8722},
        {"OElig", 338}, {"oelig", 339}, {"Scaron", 352}, {"scaron", 353}, {"Yuml", 376},
        {"fnof", 402}, {"circ", 710}, {"tilde", 732}, {"ensp", 8194}, {"emsp", 8195},
        {"thinsp", 8201},
    };
    return table;
}

// Windows-1252 mappings for 0x80..0x9F (also applied to numeric references
// in that range, matching browser behavior).
constexpr std::array<uint32_t, 32> kCp1252High = {
    8364, 0x81, 8218, 402,  8222, 8230, 8224, 8225, 710,  8240, 352,  8249, 338,  0x8D, 381, 0x8F,
    0x90, 8216, 8217, 8220, 8221, 8226, 8211, 8212, 732,  8482, 353,  8250, 339,  0x9D, 382, 376};

uint32_t map_numeric_reference(uint32_t cp) {
    if (cp >= 0x80 && cp <= 0x9F) return kCp1252High[cp - 0x80];
    if (cp == 0 || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return 0xFFFD;
    return cp;
}

// ---------------------------------------------------------------------------
// Charset decoding

std::string normalize_charset_name(std::string_view name) {
    std::string s = util::to_lower(util::trim(name));
    if (!s.empty() && (s.front() == '"' || s.front() == '\'')) s.erase(0, 1);
    if (!s.empty() && (s.back() == '"' || s.back() == '\'')) s.pop_back();
    return util::trim(s);
}

std::string decode_latin1(std::string_view bytes, bool cp1252) {
    std::string out;
    out.reserve(bytes.size());
    for (unsigned char c : bytes) {
        if (c < 0x80) {
            out.push_back(static_cast<char>(c));
        } else if (cp1252 && c < 0xA0) {
            out += encode_utf8(kCp1252High[c - 0x80]);
        } else {
            out += encode_utf8(c);
        }
    }
    return out;
}

std::string decode_utf8_lossy(std::string_view bytes) {
    std::string out;
    out.reserve(bytes.size());
    size_t i = 0;
    auto cont = [&](size_t k) {
        return i + k < bytes.size() &&
               (static_cast<unsigned char>(bytes[i + k]) & 0xC0) == 0x80;
    };
    while (i < bytes.size()) {
        unsigned char b = static_cast<unsigned char>(bytes[i]);
        if (b < 0x80) {
            out.push_back(static_cast<char>(b));
            i += 1;
        } else if (b >= 0xC2 && b <= 0xDF && cont(1)) {
            out.append(bytes.substr(i, 2));
            i += 2;
        } else if (((b == 0xE0 && i + 1 < bytes.size() &&
                     static_cast<unsigned char>(bytes[i + 1]) >= 0xA0) ||
                    (b >= 0xE1 && b <= 0xEC) ||
                    (b == 0xED && i + 1 < bytes.size() &&
                     static_cast<unsigned char>(bytes[i + 1]) <= 0x9F) ||
                    (b >= 0xEE && b <= 0xEF)) &&
                   cont(1) && cont(2)) {
            out.append(bytes.substr(i, 3));
            i += 3;
        } else if (((b == 0xF0 && i + 1 < bytes.size() &&
                     static_cast<unsigned char>(bytes[i + 1]) >= 0x90) ||
                    (b >= 0xF1 && b <= 0xF3) ||
                    (b == 0xF4 && i + 1 < bytes.size() &&
                     static_cast<unsigned char>(bytes[i + 1]) <= 0x8F)) &&
                   cont(1) && cont(2) && cont(3)) {
            out.append(bytes.substr(i, 4));
            i += 4;
        } else {
            out += "\xEF\xBF\xBD";  // U+FFFD
            i += 1;
        }
    }
    return out;
}

std::string decode_bytes(std::string_view bytes, const std::string& charset) {
    if (charset == "iso-8859-1" || charset == "latin-1" || charset == "latin1" ||
        charset == "iso8859-1" || charset == "iso_8859-1")
        return decode_latin1(bytes, false);
    if (charset == "windows-1252" || charset == "cp1252" || charset == "cp-1252")
        return decode_latin1(bytes, true);
    if (charset == "us-ascii" || charset == "ascii") return decode_latin1(bytes, false);
    return decode_utf8_lossy(bytes);  // utf-8 and anything unknown
}

// Scans the first 1024 bytes for a <meta> charset declaration.
std::optional<std::string> sniff_meta_charset(std::string_view body) {
    std::string_view head = body.substr(0, std::min<size_t>(body.size(), 1024));
    std::string lower = util::to_lower(head);
    size_t pos = 0;
    while ((pos = lower.find("<meta", pos)) != std::string::npos) {
        size_t end = lower.find('>', pos);
        if (end == std::string::npos) end = lower.size();
        std::string_view tag(lower.data() + pos, end - pos);
        size_t cs = tag.find("charset");
        if (cs != std::string_view::npos) {
            size_t i = cs + 7;
            while (i < tag.size() && (std::isspace(static_cast<unsigned char>(tag[i])) || tag[i] == '='))
                ++i;
            if (i < tag.size() && (tag[i] == '"' || tag[i] == '\'')) ++i;
            size_t start = i;
            while (i < tag.size() && !std::isspace(static_cast<unsigned char>(tag[i])) &&
                   tag[i] != '"' && tag[i] != '\'' && tag[i] != ';' && tag[i] != '/')
                ++i;
            if (i > start) return std::string(tag.substr(start, i - start));
        }
        pos = end;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Tokenizer + tree construction

const std::unordered_set<std::string>& void_elements() {
    static const std::unordered_set<std::string> s = {
        "area", "base", "br",    "col",  "embed",  "hr",  "img",
        "input", "link", "meta", "param", "source", "track", "wbr"};
    return s;
}

const std::unordered_set<std::string>& raw_text_elements() {
    static const std::unordered_set<std::string> s = {"script", "style",   "textarea",
                                                      "xmp",    "iframe",  "noembed",
                                                      "noframes"};
    return s;
}

// Start tags that implicitly close an open <p>.
const std::unordered_set<std::string>& p_closers() {
    static const std::unordered_set<std::string> s = {
        "address", "article", "aside",  "blockquote", "details", "div",    "dl",
        "fieldset", "figcaption", "figure", "footer",  "form",    "h1",     "h2",
        "h3",      "h4",      "h5",     "h6",         "header",  "hr",     "main",
        "menu",    "nav",     "ol",     "p",          "pre",     "section", "table",
        "ul"};
    return s;
}

class TreeBuilder {
public:
    explicit TreeBuilder(Node* document) : doc_(document) { open_.push_back(doc_); }

    void text(std::string s) {
        if (s.empty()) return;
        Node* n = append(NodeType::Text);
        n->text = std::move(s);
    }

    void comment(std::string s) {
        Node* n = append(NodeType::Comment);
        n->text = std::move(s);
    }

    void start_tag(const std::string& tag, std::vector<std::pair<std::string, std::string>> attrs,
                   bool self_closing) {
        imply_end_tags(tag);
        Node* n = append(NodeType::Element);
        n->tag = tag;
        n->attrs = std::move(attrs);
        if (!self_closing && !void_elements().count(tag)) open_.push_back(n);
    }

    void end_tag(const std::string& tag) {
        for (size_t i = open_.size(); i-- > 1;) {
            if (open_[i]->tag == tag) {
                open_.resize(i);
                return;
            }
        }
        // stray end tag: ignored
    }

private:
    Node* append(NodeType type) {
        auto node = std::make_unique<Node>();
        node->type = type;
        node->parent = open_.back();
        Node* raw = node.get();
        open_.back()->children.push_back(std::move(node));
        return raw;
    }

    const std::string& top_tag() const { return open_.back()->tag; }

    void pop_if(std::initializer_list<const char*> tags) {
        for (const char* t : tags) {
            if (open_.size() > 1 && top_tag() == t) {
                open_.pop_back();
                return;
            }
        }
    }

    void imply_end_tags(const std::string& tag) {
        if (open_.size() <= 1) return;
        if (p_closers().count(tag)) {
            for (size_t i = open_.size(); i-- > 1;) {
                if (open_[i]->tag == "p") {
                    open_.resize(i);
                    break;
                }
                if (open_[i]->tag == "div" || open_[i]->tag == "td" || open_[i]->tag == "th" ||
                    open_[i]->tag == "body")
                    break;
            }
        }
        if (tag == "li") pop_until_or_boundary("li", {"ul", "ol"});
        if (tag == "dt" || tag == "dd") {
            pop_until_or_boundary("dt", {"dl"});
            pop_until_or_boundary("dd", {"dl"});
        }
        if (tag == "tr") {
            pop_if({"td", "th"});
            pop_until_or_boundary("tr", {"table", "thead", "tbody", "tfoot"});
        }
        if (tag == "td" || tag == "th") pop_until_or_boundary_pair("td", "th", {"tr", "table"});
        if (tag == "thead" || tag == "tbody" || tag == "tfoot") {
            pop_if({"td", "th"});
            pop_if({"tr"});
            pop_until_or_boundary_pair("thead", "tbody", {"table"});
            pop_until_or_boundary("tfoot", {"table"});
        }
        if (tag == "option") pop_if({"option"});
        if (tag == "optgroup") {
            pop_if({"option"});
            pop_if({"optgroup"});
        }
    }

    void pop_until_or_boundary(const std::string& closee,
                               std::initializer_list<const char*> boundaries) {
        for (size_t i = open_.size(); i-- > 1;) {
            if (open_[i]->tag == closee) {
                open_.resize(i);
                return;
            }
            for (const char* b : boundaries)
                if (open_[i]->tag == b) return;
        }
    }

    void pop_until_or_boundary_pair(const std::string& a, const std::string& b,
                                    std::initializer_list<const char*> boundaries) {
        for (size_t i = open_.size(); i-- > 1;) {
            if (open_[i]->tag == a || open_[i]->tag == b) {
                open_.resize(i);
                return;
            }
            for (const char* bd : boundaries)
                if (open_[i]->tag == bd) return;
        }
    }

    Node* doc_;
    std::vector<Node*> open_;
};

bool tag_name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == ':';
}

class Parser {
public:
    Parser(std::string_view input, Node* doc) : in_(input), builder_(doc) {}

    void run() {
        std::string pending_text;
        size_t i = 0;
        while (i < in_.size()) {
            char c = in_[i];
            if (c != '<') {
                pending_text.push_back(c);
                ++i;
                continue;
            }
            // '<' — decide whether it opens markup
            if (i + 1 >= in_.size()) {
                pending_text.push_back(c);
                break;
            }
            char next = in_[i + 1];
            if (std::isalpha(static_cast<unsigned char>(next))) {
                flush_text(pending_text);
                i = parse_start_tag(i);
            } else if (next == '/') {
                if (i + 2 < in_.size() && std::isalpha(static_cast<unsigned char>(in_[i + 2]))) {
                    flush_text(pending_text);
                    i = parse_end_tag(i);
                } else {
                    i = skip_until_gt(i + 2);  // bogus comment
                }
            } else if (next == '!') {
                flush_text(pending_text);
                i = parse_markup_declaration(i);
            } else if (next == '?') {
                flush_text(pending_text);
                i = skip_until_gt(i + 2);
            } else {
                pending_text.push_back(c);
                ++i;
            }
        }
        flush_text(pending_text);
    }

private:
    void flush_text(std::string& buf) {
        if (buf.empty()) return;
        builder_.text(decode_entities(buf));
        buf.clear();
    }

    size_t skip_until_gt(size_t i) {
        while (i < in_.size() && in_[i] != '>') ++i;
        return i < in_.size() ? i + 1 : i;
    }

    size_t parse_markup_declaration(size_t i) {
        // i points at '<', in_[i+1] == '!'
        if (in_.compare(i + 2, 2, "--") == 0) {
            size_t end = in_.find("-->", i + 4);
            std::string content;
            if (end == std::string_view::npos) {
                content = std::string(in_.substr(i + 4));
                builder_.comment(content);
                return in_.size();
            }
            builder_.comment(std::string(in_.substr(i + 4, end - (i + 4))));
            return end + 3;
        }
        if (in_.compare(i + 2, 7, "[CDATA[") == 0) {
            size_t end = in_.find("]]>", i + 9);
            return end == std::string_view::npos ? in_.size() : end + 3;
        }
        return skip_until_gt(i + 2);  // doctype and friends
    }

    size_t parse_end_tag(size_t i) {
        size_t j = i + 2;
        std::string tag;
        while (j < in_.size() && tag_name_char(in_[j])) tag.push_back(in_[j++]);
        tag = util::to_lower(tag);
        j = skip_until_gt(j);
        builder_.end_tag(tag);
        return j;
    }

    size_t parse_start_tag(size_t i) {
        size_t j = i + 1;
        std::string tag;
        while (j < in_.size() && tag_name_char(in_[j])) tag.push_back(in_[j++]);
        tag = util::to_lower(tag);

        std::vector<std::pair<std::string, std::string>> attrs;
        bool self_closing = false;
        while (j < in_.size()) {
            while (j < in_.size() && std::isspace(static_cast<unsigned char>(in_[j]))) ++j;
            if (j >= in_.size()) break;
            if (in_[j] == '>') {
                ++j;
                break;
            }
            if (in_[j] == '/') {
                ++j;
                if (j < in_.size() && in_[j] == '>') {
                    self_closing = true;
                    ++j;
                    break;
                }
                continue;
            }
            // attribute name
            std::string name;
            while (j < in_.size() && in_[j] != '=' && in_[j] != '>' && in_[j] != '/' &&
                   !std::isspace(static_cast<unsigned char>(in_[j])))
                name.push_back(in_[j++]);
            name = util::to_lower(name);
            std::string value;
            bool has_value = false;
            while (j < in_.size() && std::isspace(static_cast<unsigned char>(in_[j]))) ++j;
            if (j < in_.size() && in_[j] == '=') {
                has_value = true;
                ++j;
                while (j < in_.size() && std::isspace(static_cast<unsigned char>(in_[j]))) ++j;
                if (j < in_.size() && (in_[j] == '"' || in_[j] == '\'')) {
                    char quote = in_[j++];
                    while (j < in_.size() && in_[j] != quote) value.push_back(in_[j++]);
                    if (j < in_.size()) ++j;
                } else {
                    while (j < in_.size() && in_[j] != '>' &&
                           !std::isspace(static_cast<unsigned char>(in_[j])))
                        value.push_back(in_[j++]);
                }
            }
            (void)has_value;
            if (!name.empty()) {
                bool dup = false;
                for (const auto& [k, v] : attrs)
                    if (k == name) dup = true;
                if (!dup) attrs.emplace_back(name, decode_entities(value));
            }
        }

        bool raw = raw_text_elements().count(tag) > 0;
        bool escapable_raw = tag == "title";
        builder_.start_tag(tag, std::move(attrs), self_closing);
        if (self_closing || (!raw && !escapable_raw)) return j;

        // Raw text: consume verbatim until the matching close tag.
        std::string close = "</" + tag;
        size_t pos = j;
        while (true) {
            size_t found = find_ci(pos, close);
            if (found == std::string_view::npos) {
                emit_raw(in_.substr(j), escapable_raw);
                builder_.end_tag(tag);
                return in_.size();
            }
            size_t after = found + close.size();
            char term = after < in_.size() ? in_[after] : '>';
            if (term == '>' || term == '/' || std::isspace(static_cast<unsigned char>(term))) {
                emit_raw(in_.substr(j, found - j), escapable_raw);
                builder_.end_tag(tag);
                return skip_until_gt(after);
            }
            pos = found + 1;
        }
    }

    void emit_raw(std::string_view content, bool decode) {
        if (content.empty()) return;
        builder_.text(decode ? decode_entities(content) : std::string(content));
    }

    size_t find_ci(size_t from, const std::string& needle) {
        if (from >= in_.size()) return std::string_view::npos;
        for (size_t i = from; i + needle.size() <= in_.size(); ++i) {
            if (util::iequals(in_.substr(i, needle.size()), needle)) return i;
        }
        return std::string_view::npos;
    }

    std::string_view in_;
    TreeBuilder builder_;
};

}  // namespace

std::string encode_utf8(uint32_t cp) {
    std::string out;
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
    return out;
}

std::string decode_entities(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (c != '&') {
            out.push_back(c);
            ++i;
            continue;
        }
        size_t semi = s.find(';', i + 1);
        if (semi == std::string_view::npos || semi - i > 12) {
            out.push_back(c);
            ++i;
            continue;
        }
        std::string_view body = s.substr(i + 1, semi - i - 1);
        if (!body.empty() && body[0] == '#') {
            uint32_t cp = 0;
            bool ok = body.size() > 1;
            if (body.size() > 2 && (body[1] == 'x' || body[1] == 'X')) {
                for (size_t k = 2; k < body.size(); ++k) {
                    char h = body[k];
                    if (!std::isxdigit(static_cast<unsigned char>(h))) {
                        ok = false;
                        break;
                    }
                    cp = cp * 16 + (std::isdigit(static_cast<unsigned char>(h))
                                        ? h - '0'
                                        : std::tolower(h) - 'a' + 10);
                    if (cp > 0x10FFFF) cp = 0x110000;
                }
            } else {
                for (size_t k = 1; k < body.size(); ++k) {
                    if (!std::isdigit(static_cast<unsigned char>(body[k]))) {
                        ok = false;
                        break;
                    }
                    cp = cp * 10 + (body[k] - '0');
                    if (cp > 0x10FFFF) cp = 0x110000;
                }
            }
            if (ok) {
                out += encode_utf8(map_numeric_reference(cp));
                i = semi + 1;
                continue;
            }
        } else {
            auto it = entity_table().find(std::string(body));
            if (it != entity_table().end()) {
                out += encode_utf8(it->second);
                i = semi + 1;
                continue;
            }
        }
        out.push_back(c);
        ++i;
    }
    return out;
}

ParsedPage parse_html(std::string_view body, const std::optional<std::string>& declared_charset,
                      std::string url) {
    std::string charset;
    if (declared_charset && !normalize_charset_name(*declared_charset).empty()) {
        charset = normalize_charset_name(*declared_charset);
    } else if (auto sniffed = sniff_meta_charset(body)) {
        charset = normalize_charset_name(*sniffed);
    } else {
        charset = "utf-8";
    }
    ParsedPage page;
    page.url = std::move(url);
    page.charset = charset;
    std::string text = decode_bytes(body, charset);
    Parser(text, page.root.get()).run();
    return page;
}

ParsedPage parse_html_utf8(std::string_view body, std::string url) {
    ParsedPage page;
    page.url = std::move(url);
    page.charset = "utf-8";
    Parser(body, page.root.get()).run();
    return page;
}

}  // namespace adtrace::html
