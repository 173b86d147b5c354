#include "evinet/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "evinet/rng.hpp"

namespace evinet {

namespace {

std::string user_label(std::size_t i, std::size_t n) {
  std::size_t width = 1;
  for (std::size_t x = n > 0 ? n - 1 : 0; x >= 10; x /= 10) ++width;
  std::string digits = std::to_string(i);
  return "u" + std::string(width - digits.size(), '0') + digits;
}

std::uint64_t pair_key(std::uint32_t a, std::uint32_t b) {
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

}  // namespace

void PlantedWorldSpec::validate() const {
  if (num_users == 0) throw InputError("planted world: num_users must be > 0");
  std::size_t total = 0;
  for (std::size_t s : group_sizes) {
    if (s == 0) throw InputError("planted world: empty group");
    total += s;
  }
  if (total != num_users)
    throw InputError("planted world: group sizes sum to " +
                     std::to_string(total) + ", expected " +
                     std::to_string(num_users));
  if (!(p_out >= 0 && p_out < p_in && p_in <= 1))
    throw InputError("planted world: need 0 <= p_out < p_in <= 1");
  if (networks.empty())
    throw InputError("planted world: at least one network spec required");
  for (const NetworkSpec& ns : networks) {
    if (ns.noise_epsilon < 0 || ns.noise_epsilon > 1)
      throw InputError("planted world: epsilon must lie in [0,1]");
    if (ns.keep_probability <= 0 || ns.keep_probability > 1)
      throw InputError("planted world: rho must lie in (0,1]");
  }
}

GeneratedWorld generate_world(const PlantedWorldSpec& spec) {
  spec.validate();
  const std::size_t n = spec.num_users;

  std::vector<std::uint32_t> group_of(n);
  {
    std::size_t next = 0;
    for (std::size_t gi = 0; gi < spec.group_sizes.size(); ++gi)
      for (std::size_t j = 0; j < spec.group_sizes[gi]; ++j)
        group_of[next++] = static_cast<std::uint32_t>(gi);
  }

  auto table = std::make_shared<NodeTable>();
  for (std::size_t i = 0; i < n; ++i) table->intern(user_label(i, n));

  // latent undirected planted-partition graph
  std::vector<std::pair<std::uint32_t, std::uint32_t>> latent;
  {
    Rng rng(derive_seed(spec.seed, 0));
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t j = i + 1; j < n; ++j) {
        const double p = group_of[i] == group_of[j] ? spec.p_in : spec.p_out;
        if (rng.bernoulli(p)) latent.emplace_back(i, j);
      }
  }
  if (latent.empty())
    throw InputError("planted world: latent graph came out empty");

  GeneratedWorld world;
  for (std::size_t k = 0; k < spec.networks.size(); ++k) {
    const NetworkSpec& ns = spec.networks[k];
    Rng rng(derive_seed(spec.seed, 100 + k));

    std::vector<std::pair<std::uint32_t, std::uint32_t>> kept;
    for (const auto& e : latent)
      if (rng.bernoulli(ns.keep_probability)) kept.push_back(e);

    // replace a fraction epsilon of kept edges by uniform random dyads
    std::unordered_set<std::uint64_t> present;
    for (const auto& [a, b] : kept) present.insert(pair_key(a, b));
    for (auto& edge : kept) {
      if (!rng.bernoulli(ns.noise_epsilon)) continue;
      for (int tries = 0; tries < 1000; ++tries) {
        std::uint32_t a = static_cast<std::uint32_t>(rng.uniform(n));
        std::uint32_t b = static_cast<std::uint32_t>(rng.uniform(n));
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        if (present.count(pair_key(a, b))) continue;
        present.erase(pair_key(edge.first, edge.second));
        present.insert(pair_key(a, b));
        edge = {a, b};
        break;
      }
    }

    std::vector<Arc> arcs;
    arcs.reserve(kept.size());
    for (const auto& [a, b] : kept) {
      if (ns.directed && (rng.next_u64() & 1))
        arcs.push_back({b, a, 1.0});
      else
        arcs.push_back({a, b, 1.0});
    }
    if (arcs.empty())
      throw InputError("planted world: network " + std::to_string(k) +
                       " came out empty");
    world.networks.push_back(EvidenceNetwork::from_arcs(
        table, std::move(arcs), ns.directed, NetworkKind::Implicit,
        "g" + std::to_string(k)));
  }

  // profiles: each user uses its group's tags, plus uniform noise tags
  {
    Rng rng(derive_seed(spec.seed, 1));
    const std::size_t groups = spec.group_sizes.size();
    const std::size_t tags_total = groups * spec.features.tags_per_group;
    auto tag_label = [&](std::size_t t) {
      return "t" + std::to_string(t / spec.features.tags_per_group) + "_" +
             std::to_string(t % spec.features.tags_per_group);
    };

    std::vector<std::tuple<std::string, std::string, std::uint32_t>> records;
    for (std::size_t u = 0; u < n; ++u) {
      const std::string label = user_label(u, n);
      std::uint64_t used = 0;
      for (std::size_t j = 0; j < spec.features.tags_per_group; ++j) {
        const std::size_t tag =
            group_of[u] * spec.features.tags_per_group + j;
        const std::uint64_t count = rng.poisson(spec.features.tag_use_rate);
        if (count > 0) {
          records.emplace_back(label, tag_label(tag),
                               static_cast<std::uint32_t>(count));
          used += count;
        }
      }
      const std::uint64_t noise = rng.poisson(spec.features.noise_tag_rate);
      for (std::uint64_t b = 0; b < noise; ++b)
        records.emplace_back(label,
                             tag_label(rng.uniform(tags_total)), 1);
      if (used + noise == 0) {
        // keep every row nonzero: one use of a random group tag
        const std::size_t tag = group_of[u] * spec.features.tags_per_group +
                                rng.uniform(spec.features.tags_per_group);
        records.emplace_back(label, tag_label(tag), 1);
      }
    }
    world.profiles = FeatureProfileTable::from_records(records);
  }

  world.truth.allocation_id = "truth";
  world.truth.provenance = "planted groups";
  world.truth.communities.resize(spec.group_sizes.size());
  for (std::size_t u = 0; u < n; ++u)
    world.truth.communities[group_of[u]].push_back(user_label(u, n));
  return world;
}

CommunityAllocation perturb_allocation(const CommunityAllocation& truth,
                                       double swap_fraction,
                                       std::uint64_t seed) {
  if (swap_fraction < 0 || swap_fraction > 1)
    throw InputError("perturb_allocation: fraction must lie in [0,1]");

  CommunityAllocation out = truth;
  const std::size_t k = out.communities.size();
  if (k == 0) return out;

  std::vector<std::pair<std::string, std::uint32_t>> nodes;  // label, comm
  for (std::uint32_t c = 0; c < k; ++c)
    for (const std::string& label : out.communities[c])
      nodes.emplace_back(label, c);

  const std::size_t moves = static_cast<std::size_t>(
      std::llround(swap_fraction * static_cast<double>(nodes.size())));

  Rng rng(seed);
  // partial Fisher-Yates: the first `moves` entries are the chosen nodes
  for (std::size_t i = 0; i < moves && i < nodes.size(); ++i) {
    const std::size_t j = i + rng.uniform(nodes.size() - i);
    std::swap(nodes[i], nodes[j]);
    // uniform over all communities; staying put is allowed, which makes
    // f=1 scramble to chance level rather than mirror the truth
    nodes[i].second = static_cast<std::uint32_t>(rng.uniform(k));
  }

  for (auto& community : out.communities) community.clear();
  for (const auto& [label, c] : nodes) out.communities[c].push_back(label);
  std::erase_if(out.communities,
                [](const std::vector<std::string>& c) { return c.empty(); });
  out.provenance = truth.provenance + "; perturbed f=" +
                   std::to_string(swap_fraction);
  return out;
}

}  // namespace evinet
