#pragma once

#include "sectorinfer/common/ids.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace sectorinfer::framework {

struct RemoveResult;

/// A sector. `parent` is empty for children of the implied root sentinel.
struct SectorNode {
    SectorId id;
    std::string name;
    SectorId parent;
    int depth = 1;

    bool operator==(const SectorNode&) const = default;
};

/// One line of a framework file before validation.
struct FrameworkRecord {
    SectorId id;
    SectorId parent;
    std::string name;
    int ordinal = 0;
};

/// Immutable hierarchical sector framework. Names are unique across the
/// whole tree so that generated text maps back to at most one node. Child
/// order is insertion order and drives depth-first numbering.
///
/// Edits never modify a tree; they return a new one (see add_node,
/// remove_node), so snapshots can be diffed freely and shared across threads.
class SectorTree {
public:
    /// Root sentinel only (M = 0).
    SectorTree();

    /// Validates and builds a tree. Siblings are ordered by `ordinal`.
    /// Throws Error{Data, ...} with codes DuplicateId, DuplicateName,
    /// EmptyName, InvalidName, InvalidId, OrphanParent, Cycle, DuplicateOrdinal.
    static SectorTree from_records(std::vector<FrameworkRecord> records);

    std::size_t size() const noexcept { return nodes_.size(); }
    /// Depth of the deepest node (L); 0 for an empty tree.
    int max_depth() const noexcept { return max_depth_; }
    const std::string& fingerprint() const noexcept { return fingerprint_; }

    bool contains(const SectorId& id) const { return nodes_.count(id) != 0; }
    const SectorNode* find(const SectorId& id) const;
    const SectorNode* find_by_name(std::string_view name) const;
    /// Throws Error{Data, "UnknownId"}.
    const SectorNode& node(const SectorId& id) const;

    /// Children in insertion order; pass an empty id for the root's children.
    const std::vector<SectorId>& children(const SectorId& parent) const;

    /// Strict ancestors of `id`, nearest first, excluding the root sentinel.
    std::vector<SectorId> ancestors(const SectorId& id) const;

    const std::map<SectorId, SectorNode>& nodes() const noexcept { return nodes_; }

private:
    friend SectorTree add_node(const SectorTree&, const SectorId&, std::string_view, std::optional<SectorId>);
    friend RemoveResult remove_node(const SectorTree&, const SectorId&);

    void finalize();

    std::map<SectorId, SectorNode> nodes_;
    std::map<SectorId, std::vector<SectorId>> children_;
    std::unordered_map<std::string, SectorId> by_name_;
    std::string fingerprint_;
    int max_depth_ = 0;
};

struct RemoveResult {
    SectorTree tree;
    /// The removed node and its whole subtree, in depth-first order.
    std::vector<SectorId> removed;
};

struct FrameworkDelta {
    std::set<SectorId> added;
    std::set<SectorId> removed;
    /// Present in both trees but renamed or moved to another parent.
    std::set<SectorId> modified;
    bool layer_added = false;

    bool empty() const noexcept { return added.empty() && removed.empty() && modified.empty() && !layer_added; }
};

/// Parses the line-oriented framework format:
///   id <TAB> parent <TAB> name <TAB> ordinal
/// where parent "-" denotes the root sentinel and lines starting with '#'
/// are comments.
SectorTree parse_framework(std::string_view document);
SectorTree load_framework(const std::filesystem::path& path);

/// Canonical text form (depth-first order, dense ordinals).
std::string serialize_framework(const SectorTree& tree);
void save_framework(const SectorTree& tree, const std::filesystem::path& path);

/// Adds `name` under `parent` (empty id = root). When `id` is not given the
/// first free id of the form "s<k>" is used. Throws UnknownParent,
/// DuplicateName, DuplicateId, EmptyName, InvalidName.
SectorTree add_node(const SectorTree& tree, const SectorId& parent, std::string_view name,
                    std::optional<SectorId> id = std::nullopt);

/// Removes `id` and its subtree. Throws UnknownId, or RootRemoval for the
/// empty (root sentinel) id.
RemoveResult remove_node(const SectorTree& tree, const SectorId& id);

/// Preorder traversal, children in insertion order. Position i (0-based)
/// corresponds to sector number i+1.
std::vector<SectorId> depth_first_index(const SectorTree& tree);

FrameworkDelta diff_frameworks(const SectorTree& before, const SectorTree& after);

}  // namespace sectorinfer::framework
