#include <doctest.h>

#include "extract/content.hpp"
#include "extract/metadata.hpp"
#include "extract/price.hpp"
#include "extract/product.hpp"
#include "html/parser.hpp"

using namespace adtrace;
using namespace adtrace::extract;

TEST_CASE("title and text extraction") {
    SUBCASE("title plus collapsed paragraph") {
        auto page = html::parse_html_utf8("<title>Blue Parrot</title><p>Rare  bird</p>");
        PageContent content = extract_title_text(*page.root);
        CHECK(content.title == "Blue Parrot");
        CHECK(content.text == "Rare bird");
    }
    SUBCASE("empty tree") {
        auto page = html::parse_html_utf8("");
        PageContent content = extract_title_text(*page.root);
        CHECK_FALSE(content.title.has_value());
        CHECK(content.text.empty());
    }
    SUBCASE("script content excluded") {
        auto page = html::parse_html_utf8("<script>var x=1;</script><p>hi</p>");
        CHECK(extract_title_text(*page.root).text == "hi");
    }
    SUBCASE("style, template and noscript excluded") {
        auto page = html::parse_html_utf8(
            "<style>.x{}</style><template><b>no</b></template><noscript>off</noscript>ok");
        CHECK(extract_title_text(*page.root).text == "ok");
    }
    SUBCASE("block boundaries become single newlines") {
        auto page = html::parse_html_utf8("<div>a</div><div><p>b</p></div><span>c</span> d");
        CHECK(extract_title_text(*page.root).text == "a\nb\nc d");
    }
    SUBCASE("br is a boundary, inline tags are not") {
        auto page = html::parse_html_utf8("<p>one<br>two <b>bold</b>same</p>");
        CHECK(extract_title_text(*page.root).text == "one\ntwo boldsame");
    }
}

namespace {

std::string escape_html(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '&') out += "&amp;";
        else if (c == '<') out += "&lt;";
        else if (c == '>') out += "&gt;";
        else if (c == '"') out += "&quot;";
        else out.push_back(c);
    }
    return out;
}

std::string serialize_tree(const html::Node& node) {
    std::string out;
    for (const auto& child : node.children) {
        if (child->type == html::NodeType::Text) {
            out += escape_html(child->text);
        } else if (child->type == html::NodeType::Element) {
            out += "<" + child->tag;
            for (const auto& [k, v] : child->attrs) out += " " + k + "=\"" + escape_html(v) + "\"";
            out += ">";
            out += serialize_tree(*child);
            out += "</" + child->tag + ">";
        }
    }
    return out;
}

}  // namespace

TEST_CASE("text extraction is stable under a parse/serialize round trip") {
    const char* bodies[] = {
        "<html><head><title>T</title></head><body><div class=a><p>Hello   world</p>"
        "<ul><li>x</li><li>y</li></ul></div></body></html>",
        "<div>plain <b>bold</b> tail</div><p>para &amp; entity</p>",
        "<table><tr><td>a</td><td>b</td></tr></table>after",
    };
    for (const char* body : bodies) {
        auto page = html::parse_html_utf8(body);
        PageContent first = extract_title_text(*page.root);
        auto again = html::parse_html_utf8(serialize_tree(*page.root));
        PageContent second = extract_title_text(*again.root);
        CHECK(second.text == first.text);
        CHECK(second.title == first.title);
    }
}

TEST_CASE("json-ld product extraction") {
    const char* body = R"(
<html><head>
<script type="application/ld+json">
{
  "@context": "https://schema.org",
  "@type": "Product",
  "name": "Macaw figurine",
  "description": "Hand carved",
  "image": "https://x.example/img.jpg",
  "offers": {"@type": "Offer", "price": "1500.00", "priceCurrency": "USD",
             "availability": "https://schema.org/InStock"}
}
</script>
</head><body></body></html>)";
    auto page = html::parse_html_utf8(body);
    MetadataSet meta = extract_embedded_metadata(*page.root);
    REQUIRE(meta.entries.size() == 1);
    const MetadataEntry& e = meta.entries[0];
    CHECK(e.syntax == MetadataSyntax::JsonLd);
    CHECK(e.properties.at("name") == "Macaw figurine");
    CHECK(e.properties.at("price") == "1500.00");
    CHECK(e.properties.at("priceCurrency") == "USD");
    CHECK(e.properties.at("availability") == "https://schema.org/InStock");
    CHECK(e.properties.at("image") == "https://x.example/img.jpg");
}

TEST_CASE("json-ld graph, arrays and numeric prices") {
    const char* body = R"(
<script type="application/ld+json">
{"@graph": [
  {"@type": "WebSite", "name": "ignored"},
  {"@type": ["Product"], "name": "Skull", "offers": [{"price": 249.5, "priceCurrency": "eur"}]}
]}
</script>)";
    auto page = html::parse_html_utf8(body);
    MetadataSet meta = extract_embedded_metadata(*page.root);
    REQUIRE(meta.entries.size() == 1);
    CHECK(meta.entries[0].properties.at("name") == "Skull");
    CHECK(meta.entries[0].properties.at("price") == "249.5");
    CHECK(meta.entries[0].properties.at("priceCurrency") == "EUR");
}

TEST_CASE("malformed json-ld is counted, not fatal") {
    const char* body = R"(
<script type="application/ld+json">{not json]</script>
<script type="application/ld+json">{"@type":"Product","name":"ok"}</script>)";
    auto page = html::parse_html_utf8(body);
    MetadataSet meta = extract_embedded_metadata(*page.root);
    CHECK(meta.skipped_jsonld_blocks == 1);
    REQUIRE(meta.entries.size() == 1);
    CHECK(meta.entries[0].properties.at("name") == "ok");
}

TEST_CASE("invalid price and currency are dropped from entries") {
    const char* body = R"(
<script type="application/ld+json">
{"@type":"Product","name":"x","offers":{"price":"contact us","priceCurrency":"dollars"}}
</script>)";
    auto page = html::parse_html_utf8(body);
    MetadataSet meta = extract_embedded_metadata(*page.root);
    REQUIRE(meta.entries.size() == 1);
    CHECK(meta.entries[0].properties.count("price") == 0);
    CHECK(meta.entries[0].properties.count("priceCurrency") == 0);
}

TEST_CASE("microdata product extraction") {
    const char* body = R"(
<div itemscope itemtype="https://schema.org/Product">
  <span itemprop="name">Parrot cage</span>
  <img itemprop="image" src="/img/cage.jpg">
  <div itemprop="offers" itemscope itemtype="https://schema.org/Offer">
    <meta itemprop="price" content="89.99">
    <meta itemprop="priceCurrency" content="GBP">
  </div>
  <div itemscope itemtype="https://schema.org/Review"><span itemprop="name">nested scope skipped</span></div>
</div>)";
    auto page = html::parse_html_utf8(body);
    MetadataSet meta = extract_embedded_metadata(*page.root);
    REQUIRE(meta.entries.size() == 1);
    const MetadataEntry& e = meta.entries[0];
    CHECK(e.syntax == MetadataSyntax::Microdata);
    CHECK(e.properties.at("name") == "Parrot cage");
    CHECK(e.properties.at("image") == "/img/cage.jpg");
    CHECK(e.properties.at("price") == "89.99");
    CHECK(e.properties.at("priceCurrency") == "GBP");
}

TEST_CASE("opengraph extraction") {
    const char* body = R"(
<head>
<meta property="og:title" content="Ivory carving">
<meta property="og:image" content="https://x/img.jpg">
<meta property="product:price:amount" content="250">
<meta property="product:price:currency" content="usd">
</head>)";
    auto page = html::parse_html_utf8(body);
    MetadataSet meta = extract_embedded_metadata(*page.root);
    REQUIRE(meta.entries.size() == 1);
    const MetadataEntry& e = meta.entries[0];
    CHECK(e.syntax == MetadataSyntax::OpenGraph);
    CHECK(e.properties.at("name") == "Ivory carving");
    CHECK(e.properties.at("image") == "https://x/img.jpg");
    CHECK(e.properties.at("price") == "250");
    CHECK(e.properties.at("priceCurrency") == "USD");
}

TEST_CASE("rdfa extraction") {
    const char* body = R"(
<div typeof="schema:Product">
  <span property="schema:name">Feather fan</span>
  <span property="schema:price" content="12.50">12,50</span>
</div>)";
    auto page = html::parse_html_utf8(body);
    MetadataSet meta = extract_embedded_metadata(*page.root);
    REQUIRE(meta.entries.size() == 1);
    CHECK(meta.entries[0].syntax == MetadataSyntax::Rdfa);
    CHECK(meta.entries[0].properties.at("name") == "Feather fan");
    CHECK(meta.entries[0].properties.at("price") == "12.50");
}

TEST_CASE("page with no metadata gives empty set") {
    auto page = html::parse_html_utf8("<p>nothing here</p>");
    CHECK(extract_embedded_metadata(*page.root).entries.empty());
}

TEST_CASE("metadata values appear verbatim in page source") {
    // soundness: every extracted value is a substring of the raw page
    const std::string body = R"(
<script type="application/ld+json">{"@type":"Product","name":"Verbatim Name","offers":{"price":"10.50"}}</script>
<div itemscope itemtype="https://schema.org/Product"><b itemprop="name">Another Name</b></div>
<meta property="og:title" content="OG Name">)";
    auto page = html::parse_html_utf8(body);
    MetadataSet meta = extract_embedded_metadata(*page.root);
    REQUIRE(meta.entries.size() == 3);
    for (const auto& entry : meta.entries) {
        for (const auto& [key, value] : entry.properties) {
            CAPTURE(key);
            CHECK(body.find(value) != std::string::npos);
        }
    }
}

TEST_CASE("price string parsing") {
    SUBCASE("us style with country prefix") {
        auto p = parse_price_string("US $1,500.00");
        REQUIRE(p.has_value());
        CHECK(p->amount.to_string() == "1500");
        CHECK(p->currency == "USD");
        CHECK_FALSE(p->ambiguous_currency);
    }
    SUBCASE("bare dollar is ambiguous") {
        auto p = parse_price_string("$42.99");
        REQUIRE(p.has_value());
        CHECK(p->amount.to_string() == "42.99");
        CHECK(p->currency == "USD");
        CHECK(p->ambiguous_currency);
    }
    SUBCASE("european comma decimals") {
        auto p = parse_price_string("1.500,00 \xE2\x82\xAC");
        REQUIRE(p.has_value());
        CHECK(p->amount.to_string() == "1500");
        CHECK(p->currency == "EUR");
    }
    SUBCASE("iso code token") {
        auto p = parse_price_string("GBP 12.50");
        REQUIRE(p.has_value());
        CHECK(p->amount.to_string() == "12.5");
        CHECK(p->currency == "GBP");
    }
    SUBCASE("grouping-only number with unknown currency") {
        auto p = parse_price_string("1,500");
        REQUIRE(p.has_value());
        CHECK(p->amount.to_string() == "1500");
        CHECK_FALSE(p->currency.has_value());
    }
    SUBCASE("locale resolves three trailing digits") {
        CHECK(parse_price_string("R$ 1.500")->amount.to_string() == "1500");
        CHECK(parse_price_string("US $1.500")->amount.to_string() == "1.5");
    }
    SUBCASE("yen is ambiguous between JPY and CNY") {
        auto p = parse_price_string("\xC2\xA5 12000");
        REQUIRE(p.has_value());
        CHECK(p->currency == "JPY");
        CHECK(p->ambiguous_currency);
    }
    SUBCASE("rejects garbage") {
        CHECK_FALSE(parse_price_string("call for price").has_value());
        CHECK_FALSE(parse_price_string("").has_value());
    }
}

TEST_CASE("merge precedence: metadata > scraper > page content") {
    ExtractDiagnostics diag;
    auto page = html::parse_html_utf8(
        "<title>Page Title</title>"
        "<script type=\"application/ld+json\">"
        R"({"@type":"Product","name":"Meta Product","offers":{"price":"1500.00","priceCurrency":"USD"}})"
        "</script><p>body text</p>");
    MetadataSet meta = extract_embedded_metadata(*page.root);
    PageContent content = extract_title_text(*page.root);

    SUBCASE("metadata price wins and agreeing scrape is no conflict") {
        std::map<std::string, std::string> scraped = {{"price", "US $1,500.00"},
                                                      {"seller", "wilddeals99"}};
        ProductFields fields = merge_product_fields(meta, scraped, content, diag);
        CHECK(fields.product == "Meta Product");
        CHECK(fields.provenance.at("product") == Provenance::Metadata);
        REQUIRE(fields.price.has_value());
        CHECK(fields.price->to_string() == "1500");
        CHECK(fields.currency == "USD");
        CHECK(fields.provenance.at("price") == Provenance::Metadata);
        CHECK(fields.seller == "wilddeals99");
        CHECK(fields.provenance.at("seller") == Provenance::Scraper);
        CHECK(diag.price_conflicts == 0);
        CHECK(fields.title == "Page Title");
        CHECK(fields.text == "body text");
    }

    SUBCASE("conflicting price keeps metadata and flags") {
        std::map<std::string, std::string> scraped = {{"price", "$999.00"}};
        ProductFields fields = merge_product_fields(meta, scraped, content, diag);
        CHECK(fields.price->to_string() == "1500");
        CHECK(diag.price_conflicts == 1);
    }
}

TEST_CASE("merge falls back to scraper then page title") {
    ExtractDiagnostics diag;
    MetadataSet empty_meta;
    PageContent content{std::string("Fallback Title"), "text"};

    SUBCASE("scraper-only seller passes through") {
        ProductFields fields =
            merge_product_fields(empty_meta, {{"seller", "wilddeals99"}}, content, diag);
        CHECK(fields.seller == "wilddeals99");
        CHECK(fields.provenance.at("seller") == Provenance::Scraper);
    }

    SUBCASE("product falls back to page title") {
        ProductFields fields = merge_product_fields(empty_meta, {}, content, diag);
        CHECK(fields.product == "Fallback Title");
        CHECK(fields.provenance.at("product") == Provenance::PageContent);
    }

    SUBCASE("scraped price string brings its currency") {
        ProductFields fields =
            merge_product_fields(empty_meta, {{"price", "US $2,000.00"}}, content, diag);
        CHECK(fields.price->to_string() == "2000");
        CHECK(fields.currency == "USD");
        CHECK(fields.provenance.at("price") == Provenance::Scraper);
    }
}

TEST_CASE("production date validation") {
    ExtractDiagnostics diag;
    MetadataSet meta;
    PageContent content{std::nullopt, ""};
    SUBCASE("year-only accepted") {
        ProductFields f = merge_product_fields(meta, {{"production_date", "1998"}}, content, diag);
        CHECK(f.production_date == "1998");
    }
    SUBCASE("iso date accepted") {
        ProductFields f =
            merge_product_fields(meta, {{"production_date", "2021-05-01"}}, content, diag);
        CHECK(f.production_date == "2021-05-01");
    }
    SUBCASE("free text rejected with diagnostic") {
        ProductFields f =
            merge_product_fields(meta, {{"production_date", "the nineties"}}, content, diag);
        CHECK_FALSE(f.production_date.has_value());
        CHECK(diag.invalid_production_dates == 1);
    }
}

TEST_CASE("merge determinism") {
    auto page = html::parse_html_utf8(
        "<title>T</title><meta property=\"og:title\" content=\"OG\"><p>x</p>");
    MetadataSet meta = extract_embedded_metadata(*page.root);
    PageContent content = extract_title_text(*page.root);
    std::map<std::string, std::string> scraped = {{"price", "$5"}, {"location", "NYC"}};
    ExtractDiagnostics d1, d2;
    ProductFields a = merge_product_fields(meta, scraped, content, d1);
    ProductFields b = merge_product_fields(meta, scraped, content, d2);
    CHECK(a.product == b.product);
    CHECK(a.price == b.price);
    CHECK(a.location == b.location);
    CHECK(a.provenance.size() == b.provenance.size());
    for (const auto& [k, v] : a.provenance) CHECK(b.provenance.at(k) == v);
}
