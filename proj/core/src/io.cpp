#include "evinet/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace evinet {

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  if (!fields.empty() && !fields.back().empty() && fields.back().back() == '\r')
    fields.back().pop_back();
  return fields;
}

double parse_weight(const std::string& field, const std::filesystem::path& path,
                    std::size_t line_no) {
  try {
    std::size_t consumed = 0;
    const double w = std::stod(field, &consumed);
    if (consumed != field.size()) throw std::invalid_argument(field);
    return w;
  } catch (const std::exception&) {
    throw InputError(path.string() + ":" + std::to_string(line_no) +
                     ": bad weight '" + field + "'");
  }
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  return out;
}

std::string format_weight(double w) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", w);
  return buf;
}

bool skippable(const std::string& line) {
  return line.empty() || line[0] == '#' ||
         (line.size() == 1 && line[0] == '\r');
}

}  // namespace

EvidenceNetwork load_edge_list(const std::filesystem::path& path,
                               bool directed, NetworkKind kind,
                               std::string name) {
  if (name.empty()) name = path.stem().string();
  std::ifstream in = open_input(path);

  std::vector<EdgeRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    auto fields = split_tabs(line);
    if (fields.size() < 2 || fields.size() > 3 || fields[0].empty() ||
        fields[1].empty())
      throw InputError(path.string() + ":" + std::to_string(line_no) +
                       ": expected src<TAB>dst[<TAB>weight]");
    EdgeRecord r{fields[0], fields[1], 1.0};
    if (fields.size() == 3) r.weight = parse_weight(fields[2], path, line_no);
    records.push_back(std::move(r));
  }
  return EvidenceNetwork::build(records, directed, kind, std::move(name));
}

void write_edge_list(const EvidenceNetwork& g,
                     const std::filesystem::path& path,
                     const std::vector<std::string>& extra_comments) {
  std::ofstream out = open_output(path);
  for (const auto& c : extra_comments) out << "# " << c << "\n";
  for (const EdgeRecord& r : g.to_edge_records())
    out << r.src << '\t' << r.dst << '\t' << format_weight(r.weight) << "\n";
}

FeatureProfileTable load_feature_table(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  std::vector<std::tuple<std::string, std::string, std::uint32_t>> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    auto fields = split_tabs(line);
    if (fields.size() != 3 || fields[0].empty() || fields[1].empty())
      throw InputError(path.string() + ":" + std::to_string(line_no) +
                       ": expected user<TAB>tag<TAB>count");
    const double c = parse_weight(fields[2], path, line_no);
    if (c < 0 || c != static_cast<std::uint32_t>(c))
      throw InputError(path.string() + ":" + std::to_string(line_no) +
                       ": count must be a non-negative integer");
    records.emplace_back(fields[0], fields[1],
                         static_cast<std::uint32_t>(c));
  }
  return FeatureProfileTable::from_records(records);
}

void write_feature_table(const FeatureProfileTable& table,
                         const std::filesystem::path& path,
                         const std::vector<std::string>& extra_comments) {
  std::ofstream out = open_output(path);
  for (const auto& c : extra_comments) out << "# " << c << "\n";
  for (std::uint32_t u = 0; u < table.num_users(); ++u)
    for (const FeatureCount& fc : table.row(u))
      out << table.user_label(u) << '\t' << table.feature_label(fc.feature)
          << '\t' << fc.count << "\n";
}

CommunityAllocation load_allocation(const std::filesystem::path& path,
                                    std::string allocation_id) {
  if (allocation_id.empty()) allocation_id = path.stem().string();
  std::ifstream in = open_input(path);

  std::vector<std::string> community_order;
  std::unordered_map<std::string, std::size_t> community_index;
  std::vector<std::vector<std::string>> members;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    auto fields = split_tabs(line);
    if (fields.size() != 2 || fields[0].empty() || fields[1].empty())
      throw InputError(path.string() + ":" + std::to_string(line_no) +
                       ": expected node<TAB>community_id");
    auto [it, inserted] =
        community_index.try_emplace(fields[1], members.size());
    if (inserted) {
      community_order.push_back(fields[1]);
      members.emplace_back();
    }
    members[it->second].push_back(fields[0]);
  }
  if (members.empty())
    throw InputError(path.string() + ": empty allocation file");

  CommunityAllocation alloc{std::move(allocation_id), std::move(members),
                            "loaded from " + path.filename().string()};
  alloc.validate();
  return alloc;
}

void write_allocation(const CommunityAllocation& alloc,
                      const std::filesystem::path& path,
                      const std::vector<std::string>& extra_comments) {
  std::ofstream out = open_output(path);
  for (const auto& c : extra_comments) out << "# " << c << "\n";
  for (std::size_t i = 0; i < alloc.communities.size(); ++i)
    for (const std::string& node : alloc.communities[i])
      out << node << '\t' << "c" << i << "\n";
}

std::vector<CommunityAllocation> load_allocation_dir(
    const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir))
    throw InputError(dir.string() + " is not a directory");
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".tsv")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  if (files.empty())
    throw InputError(dir.string() + ": no .tsv allocation files");

  std::vector<CommunityAllocation> allocs;
  allocs.reserve(files.size());
  for (const auto& f : files) allocs.push_back(load_allocation(f));
  return allocs;
}

void write_score_table(const QualityScoreTable& table,
                       const std::filesystem::path& path,
                       const std::vector<std::string>& extra_comments) {
  std::ofstream out = open_output(path);
  for (const auto& c : extra_comments) out << "# " << c << "\n";
  for (const auto& entry : table.missing)
    out << "# missing: " << entry.allocation_id << " in " << entry.network_id
        << " (" << entry.reason << ")\n";
  out << "allocation_id,network_id,function,score\n";
  for (const QualityScore& row : table.rows)
    out << row.allocation_id << ',' << row.network_id << ','
        << quality_function_name(row.function) << ','
        << format_weight(row.score) << "\n";
}

QualityScoreTable load_score_table(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  QualityScoreTable table;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!header_seen) {
      if (line != "allocation_id,network_id,function,score")
        throw InputError(path.string() + ": unexpected header '" + line + "'");
      header_seen = true;
      continue;
    }
    std::stringstream ss(line);
    std::string alloc, net, fn, score;
    if (!std::getline(ss, alloc, ',') || !std::getline(ss, net, ',') ||
        !std::getline(ss, fn, ',') || !std::getline(ss, score))
      throw InputError(path.string() + ":" + std::to_string(line_no) +
                       ": malformed score row");
    table.rows.push_back({alloc, net, quality_function_from_name(fn),
                          parse_weight(score, path, line_no),
                          {}});
  }
  if (!header_seen) throw InputError(path.string() + ": missing header");
  return table;
}

}  // namespace evinet
