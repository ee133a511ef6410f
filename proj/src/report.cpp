#include "depnet/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "depnet/error.hpp"
#include "depnet/random.hpp"

namespace depnet {

using nlohmann::json;

namespace {

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(splitmix64(seed) + stream);
}

std::vector<std::uint64_t> as_u64(const std::vector<std::size_t>& xs) {
  return {xs.begin(), xs.end()};
}

}  // namespace

Analysis analyze_full(const DependencyNetwork& n, const AnalysisConfig& config, std::string label) {
  if (n.node_count() == 0) throw DegenerateError("nodes: network is empty");

  Analysis a;
  MetricsReport& r = a.report;
  r.label = std::move(label);
  r.matcher = std::string(to_string(n.matcher()));
  r.config = config;
  r.network = network_summary(n);
  r.component_count = components(n.graph()).components.size();

  a.giant = giant_subnetwork(n);
  const Digraph& g = a.giant.network.graph();
  r.nodes = g.node_count();
  r.links = g.arc_count();
  const std::size_t connected = r.network.nodes - r.network.isolated_nodes;
  r.giant_node_fraction = static_cast<double>(r.nodes) /
                          static_cast<double>(connected > 0 ? connected : r.network.nodes);
  r.giant_link_fraction = r.network.links > 0 ? static_cast<double>(r.links) /
                                                     static_cast<double>(r.network.links)
                                               : 0.0;
  auto flag = [&r](const char* metric) { r.degenerate.emplace_back(metric); };

  auto directed = distances(g, DistanceMode::directed);
  r.avg_distance_directed = directed.average;
  r.directed_finite_pairs = directed.finite_pairs;
  r.diameter_directed = directed.diameter;
  if (!directed.average) flag("avg_distance_directed");
  auto undirected = distances(g, DistanceMode::undirected);
  r.avg_distance_undirected = undirected.average;
  r.diameter_undirected = undirected.diameter;
  if (!undirected.average) flag("avg_distance_undirected");

  r.transitivity = transitivity(g);
  if (connected_triples(g) == 0) flag("transitivity");

  try {
    r.degree_correlation = degree_correlation(g);
  } catch (const DegenerateError&) {
    flag("degree_correlation");
  }

  auto degrees = degree_stats(g);
  r.avg_in_degree = degrees.avg_in;
  r.avg_out_degree = degrees.avg_out;
  r.avg_total_degree = degrees.avg_total;
  r.max_total_degree = degrees.max_total;

  if (r.nodes >= 2) {
    try {
      if (config.er_samples > 0) {
        r.er = er_baseline(r.nodes, r.links, config.er_samples, stream_seed(config.seed, 0));
        r.er_avg_distance = r.er->avg_distance_mean;
        r.er_transitivity = r.er->transitivity_mean;
      } else {
        const double nn = static_cast<double>(r.nodes);
        const double k = 2.0 * static_cast<double>(r.links) / nn;
        r.er_transitivity = k / nn;
        if (k > 1.0) r.er_avg_distance = std::log(nn) / std::log(k);
      }
    } catch (const InputError&) {
      // more links than an undirected simple graph on these nodes can hold
    }
  }
  if (!r.er_avg_distance || !r.er_transitivity) flag("er_baseline");

  auto fit = [&](const std::vector<std::size_t>& seq, std::uint64_t stream,
                 const char* metric) -> std::optional<PowerLawFit> {
    try {
      return fit_power_law(as_u64(seq), config.bootstrap_n, stream_seed(config.seed, stream));
    } catch (const DegenerateError&) {
      flag(metric);
      return std::nullopt;
    }
  };
  r.power_law.in = fit(degrees.in, 1, "power_law_in");
  r.power_law.out = fit(degrees.out, 2, "power_law_out");
  r.power_law.all = fit(degrees.total, 3, "power_law_all");

  a.communities = walktrap(g, config.walktrap_t);
  r.communities = a.communities.partition.community_count;
  if (g.edge_count() > 0) {
    r.modularity = a.communities.partition.modularity;
  } else {
    flag("modularity");
  }
  return a;
}

MetricsReport analyze(const DependencyNetwork& n, const AnalysisConfig& config, std::string label) {
  return analyze_full(n, config, std::move(label)).report;
}

std::vector<std::pair<std::string, std::optional<double>>> numeric_metrics(const MetricsReport& r) {
  auto d = [](std::size_t v) { return std::optional<double>(static_cast<double>(v)); };
  auto p = [](const std::optional<PowerLawFit>& f) {
    return f && f->bootstrap_n > 0 ? std::optional<double>(f->p_value) : std::nullopt;
  };
  return {
      {"network_nodes", d(r.network.nodes)},
      {"network_links", d(r.network.links)},
      {"isolated_fraction", r.network.isolated_fraction},
      {"component_count", d(r.component_count)},
      {"giant_node_fraction", r.giant_node_fraction},
      {"giant_link_fraction", r.giant_link_fraction},
      {"nodes", d(r.nodes)},
      {"links", d(r.links)},
      {"avg_distance_directed", r.avg_distance_directed},
      {"avg_distance_undirected", r.avg_distance_undirected},
      {"diameter_directed", d(r.diameter_directed)},
      {"diameter_undirected", d(r.diameter_undirected)},
      {"transitivity", r.transitivity},
      {"degree_correlation", r.degree_correlation},
      {"avg_in_degree", r.avg_in_degree},
      {"avg_out_degree", r.avg_out_degree},
      {"avg_total_degree", r.avg_total_degree},
      {"max_total_degree", d(r.max_total_degree)},
      {"er_avg_distance", r.er_avg_distance},
      {"er_transitivity", r.er_transitivity},
      {"p_value_in", p(r.power_law.in)},
      {"p_value_out", p(r.power_law.out)},
      {"p_value_all", p(r.power_law.all)},
      {"communities", d(r.communities)},
      {"modularity", r.modularity},
  };
}

ComparisonReport compare(const MetricsReport& a, const MetricsReport& b) {
  ComparisonReport c{a, b, {}, false, false, false};
  auto left = numeric_metrics(a);
  auto right = numeric_metrics(b);
  for (std::size_t i = 0; i < left.size(); ++i) {
    const auto& [name, lv] = left[i];
    const auto& rv = right[i].second;
    c.deltas[name] = (lv && rv) ? std::optional<double>(*rv - *lv) : std::nullopt;
  }
  c.smaller_semantic_diameter = b.diameter_directed < a.diameter_directed;
  c.larger_semantic_giant_fraction = b.giant_node_fraction > a.giant_node_fraction;
  c.fewer_semantic_nodes = b.network.nodes < a.network.nodes;
  return c;
}

namespace {

json opt(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> opt_double(const json& j, const char* key) {
  const json& v = j.at(key);
  return v.is_null() ? std::nullopt : std::optional<double>(v.get<double>());
}

json fit_json(const std::optional<PowerLawFit>& f) {
  if (!f) return nullptr;
  return {{"alpha", f->alpha},       {"xmin", f->xmin},     {"ks_statistic", f->ks_statistic},
          {"p_value", f->p_value},   {"n_tail", f->n_tail}, {"bootstrap_n", f->bootstrap_n}};
}

std::optional<PowerLawFit> fit_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  PowerLawFit f;
  f.alpha = j.at("alpha").get<double>();
  f.xmin = j.at("xmin").get<std::uint64_t>();
  f.ks_statistic = j.at("ks_statistic").get<double>();
  f.p_value = j.at("p_value").get<double>();
  f.n_tail = j.at("n_tail").get<std::size_t>();
  f.bootstrap_n = j.at("bootstrap_n").get<std::size_t>();
  return f;
}

}  // namespace

json to_json(const MetricsReport& r) {
  json er = nullptr;
  if (r.er) {
    er = {{"samples", r.er->samples},
          {"avg_distance_mean", r.er->avg_distance_mean},
          {"avg_distance_sd", r.er->avg_distance_sd},
          {"transitivity_mean", r.er->transitivity_mean},
          {"transitivity_sd", r.er->transitivity_sd},
          {"analytic_distance", r.er->analytic_distance},
          {"analytic_transitivity", r.er->analytic_transitivity}};
  }
  return {
      {"label", r.label},
      {"matcher", r.matcher},
      {"config",
       {{"er_samples", r.config.er_samples},
        {"bootstrap_n", r.config.bootstrap_n},
        {"walktrap_t", r.config.walktrap_t},
        {"seed", r.config.seed}}},
      {"network",
       {{"nodes", r.network.nodes},
        {"links", r.network.links},
        {"isolated_nodes", r.network.isolated_nodes},
        {"isolated_fraction", r.network.isolated_fraction},
        {"self_loop_count", r.network.self_loop_count}}},
      {"component_count", r.component_count},
      {"giant_node_fraction", r.giant_node_fraction},
      {"giant_link_fraction", r.giant_link_fraction},
      {"nodes", r.nodes},
      {"links", r.links},
      {"avg_distance_directed", opt(r.avg_distance_directed)},
      {"avg_distance_undirected", opt(r.avg_distance_undirected)},
      {"directed_finite_pairs", r.directed_finite_pairs},
      {"diameter_directed", r.diameter_directed},
      {"diameter_undirected", r.diameter_undirected},
      {"transitivity", r.transitivity},
      {"degree_correlation", opt(r.degree_correlation)},
      {"avg_in_degree", r.avg_in_degree},
      {"avg_out_degree", r.avg_out_degree},
      {"avg_total_degree", r.avg_total_degree},
      {"max_total_degree", r.max_total_degree},
      {"er_avg_distance", opt(r.er_avg_distance)},
      {"er_transitivity", opt(r.er_transitivity)},
      {"er", er},
      {"power_law",
       {{"in", fit_json(r.power_law.in)},
        {"out", fit_json(r.power_law.out)},
        {"all", fit_json(r.power_law.all)}}},
      {"communities", r.communities},
      {"modularity", opt(r.modularity)},
      {"degenerate", r.degenerate},
  };
}

MetricsReport report_from_json(const json& j) {
  MetricsReport r;
  try {
    r.label = j.at("label").get<std::string>();
    r.matcher = j.at("matcher").get<std::string>();
    const json& cfg = j.at("config");
    r.config.er_samples = cfg.at("er_samples").get<std::size_t>();
    r.config.bootstrap_n = cfg.at("bootstrap_n").get<std::size_t>();
    r.config.walktrap_t = cfg.at("walktrap_t").get<std::size_t>();
    r.config.seed = cfg.at("seed").get<std::uint64_t>();
    const json& net = j.at("network");
    r.network.nodes = net.at("nodes").get<std::size_t>();
    r.network.links = net.at("links").get<std::size_t>();
    r.network.isolated_nodes = net.at("isolated_nodes").get<std::size_t>();
    r.network.isolated_fraction = net.at("isolated_fraction").get<double>();
    r.network.self_loop_count = net.at("self_loop_count").get<std::size_t>();
    r.component_count = j.at("component_count").get<std::size_t>();
    r.giant_node_fraction = j.at("giant_node_fraction").get<double>();
    r.giant_link_fraction = j.at("giant_link_fraction").get<double>();
    r.nodes = j.at("nodes").get<std::size_t>();
    r.links = j.at("links").get<std::size_t>();
    r.avg_distance_directed = opt_double(j, "avg_distance_directed");
    r.avg_distance_undirected = opt_double(j, "avg_distance_undirected");
    r.directed_finite_pairs = j.at("directed_finite_pairs").get<std::size_t>();
    r.diameter_directed = j.at("diameter_directed").get<std::size_t>();
    r.diameter_undirected = j.at("diameter_undirected").get<std::size_t>();
    r.transitivity = j.at("transitivity").get<double>();
    r.degree_correlation = opt_double(j, "degree_correlation");
    r.avg_in_degree = j.at("avg_in_degree").get<double>();
    r.avg_out_degree = j.at("avg_out_degree").get<double>();
    r.avg_total_degree = j.at("avg_total_degree").get<double>();
    r.max_total_degree = j.at("max_total_degree").get<std::size_t>();
    r.er_avg_distance = opt_double(j, "er_avg_distance");
    r.er_transitivity = opt_double(j, "er_transitivity");
    if (const json& er = j.at("er"); !er.is_null()) {
      ErBaseline b;
      b.samples = er.at("samples").get<std::size_t>();
      b.avg_distance_mean = er.at("avg_distance_mean").get<double>();
      b.avg_distance_sd = er.at("avg_distance_sd").get<double>();
      b.transitivity_mean = er.at("transitivity_mean").get<double>();
      b.transitivity_sd = er.at("transitivity_sd").get<double>();
      b.analytic_distance = er.at("analytic_distance").get<double>();
      b.analytic_transitivity = er.at("analytic_transitivity").get<double>();
      r.er = b;
    }
    const json& pl = j.at("power_law");
    r.power_law.in = fit_from(pl.at("in"));
    r.power_law.out = fit_from(pl.at("out"));
    r.power_law.all = fit_from(pl.at("all"));
    r.communities = j.at("communities").get<std::size_t>();
    r.modularity = opt_double(j, "modularity");
    r.degenerate = j.at("degenerate").get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw SchemaError(std::string("report: ") + e.what());
  }
  return r;
}

json to_json(const ComparisonReport& c) {
  json deltas = json::object();
  for (const auto& [name, v] : c.deltas) deltas[name] = opt(v);
  return {{"left", to_json(c.left)},
          {"right", to_json(c.right)},
          {"deltas", deltas},
          {"narrative_flags",
           {{"smaller_semantic_diameter", c.smaller_semantic_diameter},
            {"larger_semantic_giant_fraction", c.larger_semantic_giant_fraction},
            {"fewer_semantic_nodes", c.fewer_semantic_nodes}}}};
}

namespace {

std::string fixed2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s = buf;
  if (s == "-0.00") s = "0.00";
  return s;
}

std::string fixed2(const std::optional<double>& v) { return v ? fixed2(*v) : "n/a"; }

std::string p_values(const PowerLawTriple& p) {
  auto one = [](const std::optional<PowerLawFit>& f) {
    return f && f->bootstrap_n > 0 ? fixed2(f->p_value) : std::string("n/a");
  };
  return one(p.in) + " / " + one(p.out) + " / " + one(p.all);
}

// Table rows: (property, formatted value).
std::vector<std::pair<std::string, std::string>> rows(const MetricsReport& r) {
  auto n = [](std::size_t v) { return std::to_string(v); };
  return {
      {"Network nodes", n(r.network.nodes)},
      {"Network links", n(r.network.links)},
      {"Isolated fraction", fixed2(r.network.isolated_fraction)},
      {"Components", n(r.component_count)},
      {"Giant fraction (nodes / links)",
       fixed2(r.giant_node_fraction) + " / " + fixed2(r.giant_link_fraction)},
      {"Nodes", n(r.nodes)},
      {"Links", n(r.links)},
      {"Average distance (directed / undirected)",
       fixed2(r.avg_distance_directed) + " / " + fixed2(r.avg_distance_undirected)},
      {"Diameter (directed / undirected)",
       n(r.diameter_directed) + " / " + n(r.diameter_undirected)},
      {"Transitivity", fixed2(r.transitivity)},
      {"Degree correlation", fixed2(r.degree_correlation)},
      {"Average degree (in / out / all)", fixed2(r.avg_in_degree) + " / " +
                                              fixed2(r.avg_out_degree) + " / " +
                                              fixed2(r.avg_total_degree)},
      {"Maximum degree", n(r.max_total_degree)},
      {"p-value (in / out / all)", p_values(r.power_law)},
      {"Communities", n(r.communities)},
      {"Modularity", fixed2(r.modularity)},
      {"ER average distance", fixed2(r.er_avg_distance)},
      {"ER transitivity", fixed2(r.er_transitivity)},
  };
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

}  // namespace

std::string render_text(const MetricsReport& r) {
  auto table = rows(r);
  std::ostringstream out;
  out << pad("Property", 44) << (r.label.empty() ? r.matcher : r.label) << '\n';
  for (const auto& [name, value] : table) out << pad(name, 44) << value << '\n';
  if (!r.degenerate.empty()) {
    out << "Undefined:";
    for (const auto& d : r.degenerate) out << ' ' << d;
    out << '\n';
  }
  return out.str();
}

std::string render_text(const ComparisonReport& c) {
  auto left = rows(c.left);
  auto right = rows(c.right);
  std::ostringstream out;
  auto name = [](const MetricsReport& r) { return r.label.empty() ? r.matcher : r.label; };
  out << pad("Property", 44) << pad(name(c.left), 24) << name(c.right) << '\n';
  for (std::size_t i = 0; i < left.size(); ++i) {
    out << pad(left[i].first, 44) << pad(left[i].second, 24) << right[i].second << '\n';
  }
  out << "\nDeltas (right - left)\n";
  for (const auto& [metric, v] : numeric_metrics(c.left)) {
    out << pad(metric, 44) << fixed2(c.deltas.at(metric)) << '\n';
  }
  out << "\nsmaller_semantic_diameter       " << (c.smaller_semantic_diameter ? "true" : "false")
      << "\nlarger_semantic_giant_fraction  " << (c.larger_semantic_giant_fraction ? "true" : "false")
      << "\nfewer_semantic_nodes            " << (c.fewer_semantic_nodes ? "true" : "false") << '\n';
  return out.str();
}

}  // namespace depnet
