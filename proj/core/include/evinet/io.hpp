#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "evinet/community.hpp"
#include "evinet/graph.hpp"
#include "evinet/semantics.hpp"

namespace evinet {

// Edge-list file: UTF-8 TSV, lines `src<TAB>dst[<TAB>weight]`,
// '#' comment lines ignored, weight defaults to 1.
EvidenceNetwork load_edge_list(const std::filesystem::path& path,
                               bool directed,
                               NetworkKind kind = NetworkKind::Implicit,
                               std::string name = "");

// Writes logical edges; extra_comments go first as '#' lines.
void write_edge_list(const EvidenceNetwork& g,
                     const std::filesystem::path& path,
                     const std::vector<std::string>& extra_comments = {});

// Tag file: TSV `user<TAB>tag<TAB>count`.
FeatureProfileTable load_feature_table(const std::filesystem::path& path);
void write_feature_table(const FeatureProfileTable& table,
                         const std::filesystem::path& path,
                         const std::vector<std::string>& extra_comments = {});

// Allocation file: TSV `node<TAB>community_id`, one allocation per file;
// allocation_id defaults to the file stem.
CommunityAllocation load_allocation(const std::filesystem::path& path,
                                    std::string allocation_id = "");
void write_allocation(const CommunityAllocation& alloc,
                      const std::filesystem::path& path,
                      const std::vector<std::string>& extra_comments = {});

// All *.tsv files in a directory, sorted by filename.
std::vector<CommunityAllocation> load_allocation_dir(
    const std::filesystem::path& dir);

// QualityScoreTable CSV: `allocation_id,network_id,function,score`.
void write_score_table(const QualityScoreTable& table,
                       const std::filesystem::path& path,
                       const std::vector<std::string>& extra_comments = {});
QualityScoreTable load_score_table(const std::filesystem::path& path);

}  // namespace evinet
