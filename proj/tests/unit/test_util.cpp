#include <doctest.h>

#include "util/base64.hpp"
#include "util/decimal.hpp"
#include "util/public_suffix.hpp"
#include "util/strings.hpp"
#include "util/timeutil.hpp"
#include "util/url.hpp"
#include "util/uuid.hpp"

using namespace adtrace::util;

TEST_CASE("string helpers") {
    CHECK(to_lower("AbC") == "abc");
    CHECK(trim("  x \t") == "x");
    CHECK(collapse_ws("  a \t b\n\nc ") == "a b c");
    CHECK(collapse_ws("") == "");
    CHECK(iequals("KeyWord", "keyword"));
    CHECK(split("a;b;;c", ';') == std::vector<std::string>{"a", "b", "", "c"});
    CHECK(split_csv_line("a,\"b,c\",d") == std::vector<std::string>{"a", "b,c", "d"});
    CHECK(split_csv_line("\"he said \"\"hi\"\"\",x") ==
          std::vector<std::string>{"he said \"hi\"", "x"});
    CHECK(contains_ci("Tiger Claw", "claw"));
    CHECK_FALSE(contains_ci("Tiger", "claw"));
}

TEST_CASE("decimal parse and render") {
    CHECK(Decimal::parse("1500")->to_string() == "1500");
    CHECK(Decimal::parse("1500.00")->to_string() == "1500");
    CHECK(Decimal::parse("19.99")->to_string() == "19.99");
    CHECK(Decimal::parse("0.5")->to_string() == "0.5");
    CHECK(Decimal::parse("-3.25")->to_string() == "-3.25");
    CHECK(Decimal::parse(" 42 ")->units() == 420000);
    CHECK_FALSE(Decimal::parse("1.23456").has_value());
    CHECK_FALSE(Decimal::parse("abc").has_value());
    CHECK_FALSE(Decimal::parse("").has_value());
    CHECK_FALSE(Decimal::parse("1.2.3").has_value());
}

TEST_CASE("iso8601 round trip") {
    // 2023-08-08T00:00:00Z
    UnixMillis ms = 1691452800000;
    CHECK(to_iso8601_ms(ms) == "2023-08-08T00:00:00.000Z");
    CHECK(parse_iso8601("2023-08-08T00:00:00.000Z") == ms);
    CHECK(parse_iso8601("2023-08-08T00:00:00Z") == ms);
    CHECK(utc_date(ms + 3600 * 1000) == "2023-08-08");
    CHECK(parse_iso8601(to_iso8601_ms(1234567890123)) == 1234567890123);
    CHECK_FALSE(parse_iso8601("not a date").has_value());
}

TEST_CASE("fixed clock is deterministic") {
    auto clock = Clock::fixed(1000, 10);
    CHECK(clock->now_ms() == 1000);
    CHECK(clock->now_ms() == 1010);
    CHECK(clock->now_ms() == 1020);
}

TEST_CASE("uuid generators") {
    auto random = UuidGenerator::random();
    std::string a = random->next();
    std::string b = random->next();
    CHECK(is_valid_uuid(a));
    CHECK(a != b);
    CHECK(a[14] == '4');  // version nibble

    auto seq = UuidGenerator::sequential();
    std::string s1 = seq->next();
    auto seq2 = UuidGenerator::sequential();
    CHECK(s1 == seq2->next());
    CHECK(is_valid_uuid(s1));
}

TEST_CASE("base64 round trip") {
    CHECK(base64_encode("") == "");
    CHECK(base64_encode("f") == "Zg==");
    CHECK(base64_encode("fo") == "Zm8=");
    CHECK(base64_encode("foo") == "Zm9v");
    std::string bytes;
    for (int i = 0; i < 256; ++i) bytes.push_back(static_cast<char>(i));
    CHECK(base64_decode(base64_encode(bytes)) == bytes);
    CHECK_FALSE(base64_decode("!!!").has_value());
}

TEST_CASE("url parsing") {
    auto u = parse_url("https://www.ebay.com/sch/i.html_from=R40&_nkw=KEYWORD&_sacat");
    REQUIRE(u.has_value());
    CHECK(u->scheme == "https");
    CHECK(u->host == "www.ebay.com");
    CHECK(u->path == "/sch/i.html_from=R40&_nkw=KEYWORD&_sacat");
    CHECK_FALSE(u->has_query);

    auto q = parse_url("http://Example.COM:8080/a/b?x=1&y=2#frag");
    REQUIRE(q.has_value());
    CHECK(q->port == "8080");
    CHECK(q->query == "x=1&y=2");
    CHECK(q->fragment == "frag");

    CHECK_FALSE(parse_url("not a url").has_value());
    CHECK_FALSE(parse_url("ftp://example.com/x").has_value());
    CHECK_FALSE(parse_url("mailto:x@example.com").has_value());
    CHECK_FALSE(parse_url("https:///missing-host").has_value());
}

TEST_CASE("relative reference resolution") {
    auto base = parse_url("https://ex.com/a/b");
    REQUIRE(base.has_value());
    CHECK(resolve_reference(*base, "/item/1")->to_string() == "https://ex.com/item/1");
    CHECK(resolve_reference(*base, "c")->to_string() == "https://ex.com/a/c");
    CHECK(resolve_reference(*base, "../x")->to_string() == "https://ex.com/x");
    CHECK(resolve_reference(*base, "//other.com/p")->to_string() == "https://other.com/p");
    CHECK(resolve_reference(*base, "?q=1")->to_string() == "https://ex.com/a/b?q=1");
    CHECK(resolve_reference(*base, "#top")->to_string() == "https://ex.com/a/b#top");
    CHECK(resolve_reference(*base, "http://h.net/z")->to_string() == "http://h.net/z");
    CHECK_FALSE(resolve_reference(*base, "javascript:void(0)").has_value());
    CHECK_FALSE(resolve_reference(*base, "mailto:a@b.c").has_value());
}

TEST_CASE("url normalization and canonical form") {
    auto u = parse_url("HTTPS://WWW.Ebay.COM:443/a/../b?z=1&a=2#frag");
    REQUIRE(u.has_value());
    Url n = normalize(*u);
    CHECK(n.host == "www.ebay.com");
    CHECK(n.port.empty());
    CHECK(n.path == "/b");
    CHECK_FALSE(n.has_fragment);
    CHECK(canonical_url(*u) == "https://www.ebay.com/b?a=2&z=1");

    CHECK(canonical_url("http://ex.com") == "http://ex.com/");
    // stable sort keeps duplicate keys in order
    CHECK(canonical_url("http://ex.com/p?b=2&a=1&b=1") == "http://ex.com/p?a=1&b=2&b=1");
}

TEST_CASE("form urlencoding") {
    CHECK(form_urlencode("tiger claw") == "tiger+claw");
    CHECK(form_urlencode("Ara glaucogularis") == "Ara+glaucogularis");
    CHECK(form_urlencode("a&b=c") == "a%26b%3Dc");
    CHECK(form_urlencode("caf\xC3\xA9") == "caf%C3%A9");
    CHECK(form_urlencode("safe-._~") == "safe-._~");
}

TEST_CASE("registrable domain via public suffix snapshot") {
    CHECK(registrable_domain("www.ebay.com") == "ebay.com");
    CHECK(registrable_domain("www.ebay.co.uk") == "ebay.co.uk");
    CHECK(registrable_domain("shop.example.de") == "example.de");
    CHECK(registrable_domain("a.b.c.ebay.com.au") == "ebay.com.au");
    CHECK(registrable_domain("ebay.com") == "ebay.com");
    CHECK(registrable_domain("a.example") == "a.example");
    CHECK(registrable_domain("192.168.1.10") == "192.168.1.10");
    CHECK_FALSE(registrable_domain("com").has_value());
    CHECK_FALSE(registrable_domain("co.uk").has_value());
    CHECK_FALSE(registrable_domain("").has_value());
    // wildcard + exception rules
    CHECK_FALSE(registrable_domain("foo.ck").has_value());
    CHECK(registrable_domain("bar.foo.ck") == "bar.foo.ck");
    CHECK(registrable_domain("www.ck") == "www.ck");
    CHECK(public_suffix("www.ebay.co.uk") == "co.uk");
    CHECK(public_suffix("x.github.io") == "github.io");
}
