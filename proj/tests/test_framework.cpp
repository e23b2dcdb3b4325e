#include "sectorinfer/common/error.hpp"
#include "sectorinfer/framework/sector_tree.hpp"
#include "support.hpp"

#include <doctest.h>

#include <set>

using namespace sectorinfer;
using namespace sectorinfer::framework;

namespace {

std::string error_code(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return "";
}

std::vector<std::string> ids(const std::vector<SectorId>& v) {
    std::vector<std::string> out;
    for (const auto& id : v) out.push_back(id.str());
    return out;
}

}  // namespace

TEST_CASE("minimal tree") {
    const auto t = parse_framework("s1\t-\tfintech\t0\n");
    CHECK(t.size() == 1);
    CHECK(t.max_depth() == 1);
    CHECK(t.node(SectorId("s1")).depth == 1);
}

TEST_CASE("fixture structure and numbering") {
    const auto t = sitest::small_fixture();
    CHECK(t.size() == 7);
    CHECK(t.max_depth() == 3);
    for (const char* c : {"s4", "s5", "s6", "s7"}) CHECK(t.node(SectorId(c)).depth == t.node(SectorId("s3")).depth + 1);
    CHECK(ids(depth_first_index(t)) == std::vector<std::string>{"s1", "s2", "s3", "s4", "s5", "s6", "s7"});
    CHECK(ids(t.ancestors(SectorId("s6"))) == std::vector<std::string>{"s3", "s1"});
    CHECK(t.find_by_name("gaming")->id == SectorId("s6"));
}

TEST_CASE("preorder enumerates the first subtree before the second") {
    const auto t = parse_framework("a\t-\tx\t0\nb\t-\ty\t1\nc\ta\tz\t0\nd\tb\tw\t0\n");
    CHECK(ids(depth_first_index(t)) == std::vector<std::string>{"a", "c", "b", "d"});
}

TEST_CASE("validation errors") {
    CHECK(error_code([] { parse_framework("a\t-\tfintech\t0\nb\t-\tfintech\t1\n"); }) == "DuplicateName");
    CHECK(error_code([] { parse_framework("a\t-\tx\t0\na\t-\ty\t1\n"); }) == "DuplicateId");
    CHECK(error_code([] { parse_framework("a\tzz\tx\t0\n"); }) == "OrphanParent");
    CHECK(error_code([] { parse_framework("a\t-\t\t0\n"); }) == "EmptyName");
    CHECK(error_code([] { parse_framework("a\t-\tFintech\t0\n"); }) == "InvalidName");
    CHECK(error_code([] { parse_framework("a\tb\tx\t0\nb\ta\ty\t0\n"); }) == "Cycle");
    CHECK(error_code([] { parse_framework("a\t-\tx\t0\nb\t-\ty\t0\n"); }) == "DuplicateOrdinal");
}

TEST_CASE("add node") {
    const auto t = sitest::small_fixture();
    const auto t2 = add_node(t, SectorId("s3"), "payments", SectorId("s8"));
    CHECK(t.size() == 7);
    CHECK(t2.node(SectorId("s8")).depth == t.node(SectorId("s3")).depth + 1);
    CHECK(t2.fingerprint() != t.fingerprint());
    const auto d = diff_frameworks(t, t2);
    CHECK(d.added == std::set<SectorId>{SectorId("s8")});
    CHECK_FALSE(d.layer_added);

    const auto deeper = add_node(t, SectorId("s4"), "neobanks");
    CHECK(deeper.max_depth() == t.max_depth() + 1);
    CHECK(diff_frameworks(t, deeper).layer_added);

    CHECK(error_code([&] { add_node(t, SectorId("nope"), "x"); }) == "UnknownParent");
    CHECK(error_code([&] { add_node(t, SectorId("s3"), "gaming"); }) == "DuplicateName");
}

TEST_CASE("remove node") {
    const auto t = sitest::small_fixture();
    const auto r = remove_node(t, SectorId("s3"));
    CHECK(ids(r.removed) == std::vector<std::string>{"s3", "s4", "s5", "s6", "s7"});
    CHECK(r.tree.size() == 2);
    const auto d = diff_frameworks(t, r.tree);
    CHECK(d.removed.size() == 5);
    CHECK(d.added.empty());
    CHECK(remove_node(t, SectorId("s7")).removed.size() == 1);
    CHECK(error_code([&] { remove_node(t, SectorId("zz")); }) == "UnknownId");
    CHECK(error_code([&] { remove_node(t, SectorId()); }) == "RootRemoval");
}

TEST_CASE("renames and moves are reported as modified") {
    const auto t = parse_framework("a\t-\tx\t0\nb\t-\ty\t1\nc\ta\tz\t0\n");
    const auto renamed = parse_framework("a\t-\tx\t0\nb\t-\ty2\t1\nc\ta\tz\t0\n");
    const auto moved = parse_framework("a\t-\tx\t0\nb\t-\ty\t1\nc\tb\tz\t0\n");
    CHECK(diff_frameworks(t, renamed).modified == std::set<SectorId>{SectorId("b")});
    CHECK(diff_frameworks(t, moved).modified == std::set<SectorId>{SectorId("c")});
}

TEST_CASE("random tree properties") {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 1000; ++i) {
        const auto t = sitest::random_tree(rng, 50, 4);
        const auto order = depth_first_index(t);
        CHECK(order.size() == t.size());
        CHECK(std::set<SectorId>(order.begin(), order.end()).size() == t.size());
        CHECK(diff_frameworks(t, t).empty());

        const auto reloaded = parse_framework(serialize_framework(t));
        CHECK(reloaded.fingerprint() == t.fingerprint());
        CHECK(depth_first_index(reloaded) == order);

        const auto& parent = order[rng() % order.size()];
        const auto grown = add_node(t, parent, "extra node");
        const auto added = grown.find_by_name("extra node")->id;
        CHECK(remove_node(grown, added).tree.fingerprint() == t.fingerprint());
        const auto d = diff_frameworks(t, grown);
        CHECK(d.added == std::set<SectorId>{added});
        for (const auto& id : d.added) CHECK(d.removed.count(id) == 0);
        CHECK_FALSE(d.empty());
    }
}
