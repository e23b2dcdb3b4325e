#include "sectorinfer/framework/sector_tree.hpp"

#include "sectorinfer/common/error.hpp"
#include "sectorinfer/common/hash.hpp"
#include "sectorinfer/common/text.hpp"
#include "sectorinfer/persistence/record.hpp"
#include "sectorinfer/persistence/snapshot_store.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <functional>

namespace sectorinfer::framework {

namespace {

constexpr std::string_view kRootMarker = "-";

[[noreturn]] void fail(const char* code, const std::string& detail) { throw Error(ErrorKind::Data, code, detail); }

void check_name(std::string_view name) {
    if (text::trim(name).empty()) fail("EmptyName", "sector name is empty");
    if (!text::is_lowercase(name) || text::trim(name) != name || name.find_first_of("\t\n\r") != std::string_view::npos) {
        fail("InvalidName", std::string(name));
    }
}

void check_id(const SectorId& id) {
    if (id.empty() || id.str() == kRootMarker || id.str().find_first_of(" \t\n\r") != std::string::npos) {
        fail("InvalidId", "'" + id.str() + "'");
    }
}

const std::vector<SectorId> kNoChildren;

}  // namespace

SectorTree::SectorTree() { finalize(); }

SectorTree SectorTree::from_records(std::vector<FrameworkRecord> records) {
    SectorTree tree;
    std::map<SectorId, std::vector<std::pair<int, SectorId>>> ordered;
    for (auto& rec : records) {
        check_id(rec.id);
        check_name(rec.name);
        if (tree.nodes_.count(rec.id)) fail("DuplicateId", rec.id.str());
        if (!tree.by_name_.emplace(rec.name, rec.id).second) fail("DuplicateName", rec.name);
        tree.nodes_.emplace(rec.id, SectorNode{rec.id, rec.name, rec.parent, 0});
        ordered[rec.parent].emplace_back(rec.ordinal, rec.id);
    }
    for (auto& [parent, kids] : ordered) {
        if (!parent.empty() && !tree.nodes_.count(parent)) fail("OrphanParent", "parent '" + parent.str() + "'");
        std::stable_sort(kids.begin(), kids.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        for (std::size_t i = 1; i < kids.size(); ++i) {
            if (kids[i].first == kids[i - 1].first) {
                fail("DuplicateOrdinal", "ordinal " + std::to_string(kids[i].first) + " under '" + parent.str() + "'");
            }
        }
        auto& out = tree.children_[parent];
        for (const auto& kid : kids) out.push_back(kid.second);
    }
    tree.finalize();
    return tree;
}

void SectorTree::finalize() {
    // Depths by BFS from the root; anything not reached sits on a cycle.
    std::size_t reached = 0;
    max_depth_ = 0;
    std::deque<std::pair<SectorId, int>> queue{{SectorId{}, 0}};
    while (!queue.empty()) {
        const auto [id, depth] = queue.front();
        queue.pop_front();
        if (!id.empty()) {
            nodes_.at(id).depth = depth;
            max_depth_ = std::max(max_depth_, depth);
            ++reached;
        }
        const auto it = children_.find(id);
        if (it == children_.end()) continue;
        for (const auto& kid : it->second) queue.emplace_back(kid, depth + 1);
    }
    if (reached != nodes_.size()) fail("Cycle", std::to_string(nodes_.size() - reached) + " nodes unreachable from root");

    Sha256 hasher;
    for (const auto& [id, n] : nodes_) hasher.field(id.str()).field(n.name).field(n.parent.str());
    fingerprint_ = hasher.hex();
}

const SectorNode* SectorTree::find(const SectorId& id) const {
    const auto it = nodes_.find(id);
    return it == nodes_.end() ? nullptr : &it->second;
}

const SectorNode* SectorTree::find_by_name(std::string_view name) const {
    const auto it = by_name_.find(std::string(name));
    return it == by_name_.end() ? nullptr : &nodes_.at(it->second);
}

const SectorNode& SectorTree::node(const SectorId& id) const {
    if (const auto* n = find(id)) return *n;
    fail("UnknownId", id.str());
}

const std::vector<SectorId>& SectorTree::children(const SectorId& parent) const {
    const auto it = children_.find(parent);
    return it == children_.end() ? kNoChildren : it->second;
}

std::vector<SectorId> SectorTree::ancestors(const SectorId& id) const {
    std::vector<SectorId> out;
    for (SectorId cur = node(id).parent; !cur.empty(); cur = nodes_.at(cur).parent) out.push_back(cur);
    return out;
}

SectorTree parse_framework(std::string_view document) {
    std::vector<FrameworkRecord> records;
    int line_no = 0;
    for (const auto& raw : text::split(document, '\n')) {
        ++line_no;
        std::string_view line = raw;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (text::trim(line).empty() || line.front() == '#') continue;
        const auto fields = persistence::split_record(line);
        if (fields.size() != 4) fail("Malformed", "line " + std::to_string(line_no) + ": expected 4 fields");
        FrameworkRecord rec;
        rec.id = SectorId{fields[0]};
        rec.parent = fields[1] == kRootMarker ? SectorId{} : SectorId{fields[1]};
        rec.name = fields[2];
        const auto& ord = fields[3];
        const auto [ptr, ec] = std::from_chars(ord.data(), ord.data() + ord.size(), rec.ordinal);
        if (ec != std::errc{} || ptr != ord.data() + ord.size()) {
            fail("Malformed", "line " + std::to_string(line_no) + ": bad ordinal '" + ord + "'");
        }
        records.push_back(std::move(rec));
    }
    return SectorTree::from_records(std::move(records));
}

SectorTree load_framework(const std::filesystem::path& path) { return parse_framework(persistence::read_file(path)); }

std::string serialize_framework(const SectorTree& tree) {
    std::string out = "# id\tparent\tname\tordinal\n";
    std::function<void(const SectorId&)> visit = [&](const SectorId& parent) {
        const auto& kids = tree.children(parent);
        for (std::size_t i = 0; i < kids.size(); ++i) {
            const auto& n = tree.node(kids[i]);
            out += persistence::join_record(
                {n.id.str(), parent.empty() ? std::string(kRootMarker) : parent.str(), n.name, std::to_string(i)});
            out.push_back('\n');
            visit(n.id);
        }
    };
    visit(SectorId{});
    return out;
}

void save_framework(const SectorTree& tree, const std::filesystem::path& path) {
    persistence::write_file_atomic(path, serialize_framework(tree));
}

SectorTree add_node(const SectorTree& tree, const SectorId& parent, std::string_view name, std::optional<SectorId> id) {
    if (!parent.empty() && !tree.contains(parent)) fail("UnknownParent", parent.str());
    check_name(name);
    if (tree.find_by_name(name)) fail("DuplicateName", std::string(name));
    if (!id) {
        for (std::size_t k = tree.size() + 1;; ++k) {
            SectorId candidate{"s" + std::to_string(k)};
            if (!tree.contains(candidate)) {
                id = std::move(candidate);
                break;
            }
        }
    }
    check_id(*id);
    if (tree.contains(*id)) fail("DuplicateId", id->str());

    SectorTree next = tree;
    next.nodes_.emplace(*id, SectorNode{*id, std::string(name), parent, 0});
    next.by_name_.emplace(std::string(name), *id);
    next.children_[parent].push_back(*id);
    next.finalize();
    return next;
}

RemoveResult remove_node(const SectorTree& tree, const SectorId& id) {
    if (id.empty()) fail("RootRemoval", "the root sentinel cannot be removed");
    const auto& target = tree.node(id);

    RemoveResult result{tree, {}};
    std::function<void(const SectorId&)> collect = [&](const SectorId& cur) {
        result.removed.push_back(cur);
        for (const auto& kid : tree.children(cur)) collect(kid);
    };
    collect(id);

    auto& next = result.tree;
    for (const auto& gone : result.removed) {
        next.by_name_.erase(next.nodes_.at(gone).name);
        next.nodes_.erase(gone);
        next.children_.erase(gone);
    }
    auto& siblings = next.children_[target.parent];
    siblings.erase(std::remove(siblings.begin(), siblings.end(), id), siblings.end());
    if (siblings.empty()) next.children_.erase(target.parent);
    next.finalize();
    return result;
}

std::vector<SectorId> depth_first_index(const SectorTree& tree) {
    std::vector<SectorId> order;
    order.reserve(tree.size());
    std::vector<SectorId> stack(tree.children(SectorId{}).rbegin(), tree.children(SectorId{}).rend());
    while (!stack.empty()) {
        SectorId cur = std::move(stack.back());
        stack.pop_back();
        const auto& kids = tree.children(cur);
        stack.insert(stack.end(), kids.rbegin(), kids.rend());
        order.push_back(std::move(cur));
    }
    return order;
}

FrameworkDelta diff_frameworks(const SectorTree& before, const SectorTree& after) {
    FrameworkDelta delta;
    for (const auto& [id, n] : after.nodes()) {
        if (!before.contains(id)) delta.added.insert(id);
    }
    for (const auto& [id, n] : before.nodes()) {
        if (!after.contains(id)) delta.removed.insert(id);
    }
    for (const auto& [id, n] : after.nodes()) {
        const auto* old = before.find(id);
        if (old && (old->name != n.name || old->parent != n.parent)) delta.modified.insert(id);
    }
    delta.layer_added = after.max_depth() > before.max_depth();
    return delta;
}

}  // namespace sectorinfer::framework
