// Command-line front end: matroid and graft file operations, recognition
// with certificates, gadget generators, and the excluded-minor search.

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>

#include "dgm/io.hpp"

using namespace dgm;

namespace {

BinaryMatroid load_matroid(const std::string& path) { return parse_matroid(io::read_file(path)); }

void emit(const std::string& out, const std::string& content) {
  if (out.empty()) std::cout << content;
  else io::write_file(out, content);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::string render_tree(const MatroidLabelledTree& t) {
  std::ostringstream out;
  auto adj = t.adjacency();
  std::vector<int> seen(t.nodes.size(), 0);
  std::function<void(int, int, const std::string&, const std::string&)> walk =
      [&](int v, int depth, const std::string& via, const std::string& indent) {
        seen[v] = 1;
        const auto& m = t.nodes[v].matroid;
        out << indent;
        if (!via.empty()) out << "(" << via << ") ";
        out << t.nodes[v].name << ": " << m.size() << " elements, rank " << m.rank();
        if (is_uniform_rank1(m)) out << ", U(1," << m.size() << ")";
        else if (is_uniform_corank1(m)) out << ", U(" << m.size() - 1 << "," << m.size() << ")";
        else if (is_3_connected(m)) out << ", 3-connected";
        out << " {";
        for (int e = 0; e < m.size(); ++e) out << (e ? " " : "") << m.elems.labels[e];
        out << "}\n";
        for (auto& [y, mk] : adj[v])
          if (!seen[y]) walk(y, depth + 1, mk, indent + "  ");
      };
  walk(0, 0, "", "");
  return out.str();
}

nlohmann::json tree_as_json(const MatroidLabelledTree& t) {
  auto st = serialize_tree(t);
  return io::tree_json(st);
}

int run(int argc, char** argv) {
  CLI::App app{"delta-graphic matroid toolkit"};
  app.require_subcommand(1);
  std::string config_path;
  long seed = 0;
  app.add_option("--config", config_path, "config file (key=value lines)");
  app.add_option("--seed", seed, "seed for randomized generators; never affects results");

  // info
  auto* info = app.add_subcommand("info", "rank, size, connectivity and class flags");
  std::string info_in;
  info->add_option("matroid", info_in)->required();

  // dual
  auto* dual = app.add_subcommand("dual", "write the dual matroid");
  std::string dual_in, dual_out;
  dual->add_option("matroid", dual_in)->required();
  dual->add_option("-o,--out", dual_out);

  // minor
  auto* minor = app.add_subcommand("minor", "delete and contract elements");
  std::string minor_in, minor_out, minor_del, minor_con;
  minor->add_option("matroid", minor_in)->required();
  minor->add_option("--delete", minor_del, "comma-separated labels");
  minor->add_option("--contract", minor_con, "comma-separated labels");
  minor->add_option("-o,--out", minor_out);

  // twosum
  auto* tws = app.add_subcommand("twosum", "2-sum of two matroid files");
  std::string tws_a, tws_b, tws_marker, tws_out;
  tws->add_option("a", tws_a)->required();
  tws->add_option("b", tws_b)->required();
  tws->add_option("--marker", tws_marker)->required();
  tws->add_option("-o,--out", tws_out);

  // tree
  auto* tree = app.add_subcommand("tree", "canonical tree decomposition");
  std::string tree_in;
  bool tree_json_flag = false;
  tree->add_option("matroid", tree_in)->required();
  tree->add_flag("--json", tree_json_flag, "also print the JSON form");

  // graft
  auto* graft = app.add_subcommand("graft", "graft operations");
  graft->require_subcommand(1);
  auto* gfeas = graft->add_subcommand("feasible", "feasible family of a graft");
  std::string gfeas_in;
  gfeas->add_option("graft", gfeas_in)->required();
  auto* gcyc = graft->add_subcommand("cyclic", "build and validate a cyclic decomposition");
  std::string gcyc_in, gcyc_out;
  gcyc->add_option("graft", gcyc_in)->required();
  gcyc->add_option("-o,--out", gcyc_out);
  auto* gtom = graft->add_subcommand("tomatroid", "compose the matroid of a decomposition");
  std::string gtom_in, gtom_decomp, gtom_out;
  gtom->add_option("graft", gtom_in)->required();
  gtom->add_option("--decomp", gtom_decomp)->required();
  gtom->add_option("-o,--out", gtom_out);

  // recognize / verify
  auto* rec = app.add_subcommand("recognize", "decide delta-graphicness with a certificate");
  std::string rec_in, rec_cert;
  rec->add_option("matroid", rec_in)->required();
  rec->add_option("--certificate", rec_cert, "write the certificate JSON here");
  auto* ver = app.add_subcommand("verify", "check a certificate against a matroid");
  std::string ver_in, ver_cert;
  ver->add_option("matroid", ver_in)->required();
  ver->add_option("certificate", ver_cert)->required();

  // catalog
  auto* cat = app.add_subcommand("catalog", "emit a named matroid");
  std::string cat_name, cat_out;
  cat->add_option("name", cat_name)->required();
  cat->add_option("-o,--out", cat_out);

  // gadget
  auto* gadget = app.add_subcommand("gadget", "emit gadget matroid files");
  gadget->require_subcommand(1);
  std::string g_out;
  std::vector<std::string> g_parts;
  int bench_m = 3, bench_k = 2;
  std::vector<std::string> star_markers;
  auto* gtripod = gadget->add_subcommand("tripod", "m1 +2 m2 +2 m3 by catalog names");
  gtripod->add_option("parts", g_parts, "three catalog names")->expected(3);
  gtripod->add_option("-o,--out", g_out);
  auto* gh = gadget->add_subcommand("h", "H-matroid from x1 y1 v1 v2 x2 y2");
  gh->add_option("parts", g_parts, "six catalog names")->expected(6);
  gh->add_option("-o,--out", g_out);
  auto* ghp = gadget->add_subcommand("hprime", "H'-matroid from x1 y1 v1 v v2 x2 y2");
  ghp->add_option("parts", g_parts, "seven catalog names")->expected(7);
  ghp->add_option("-o,--out", g_out);
  auto* gbench = gadget->add_subcommand("bench", "(m,k)-bench from x1 y1 xm ym w");
  gbench->add_option("-m", bench_m, "spine length")->required();
  gbench->add_option("-k", bench_k, "leaf position")->required();
  gbench->add_option("parts", g_parts, "five catalog names")->expected(5);
  gbench->add_option("-o,--out", g_out);
  auto* gstar = gadget->add_subcommand("starlike", "hub l1 l2 l3 l4 with hub markers");
  gstar->add_option("parts", g_parts, "five catalog names")->expected(5);
  gstar->add_option("--markers", star_markers, "four hub elements")->expected(4);
  gstar->add_option("-o,--out", g_out);

  // search
  auto* sea = app.add_subcommand("search", "minor-minimal non-delta-graphic matroids");
  int sea_max_n = 7, sea_shards = 1, sea_threads = 1;
  std::string sea_resume, sea_out;
  sea->add_option("--max-n", sea_max_n)->required();
  sea->add_option("--shards", sea_shards);
  sea->add_option("--threads", sea_threads);
  sea->add_option("--resume", sea_resume, "checkpoint directory");
  sea->add_option("--out", sea_out, "report JSON path");

  CLI11_PARSE(app, argc, argv);

  if (const char* env = std::getenv("DGM_CONFIG"); env && config_path.empty()) config_path = env;
  if (!config_path.empty()) load_config(config_path);
  (void)seed;

  if (*info) {
    auto m = load_matroid(info_in);
    std::cout << "elements: " << m.size() << "\n";
    std::cout << "rank: " << m.rank() << "\n";
    std::cout << "connected: " << (m.is_connected() ? "yes" : "no") << "\n";
    std::cout << "3-connected: " << (is_3_connected(m) ? "yes" : "no") << "\n";
    std::cout << "graphic: " << (is_graphic(m) ? "yes" : "no") << "\n";
    std::cout << "cographic: " << (is_cographic(m) ? "yes" : "no") << "\n";
    std::cout << "regular: " << (is_regular(m) ? "yes" : "no") << "\n";
    return 0;
  }
  if (*dual) {
    emit(dual_out, print_matroid(load_matroid(dual_in).dual()));
    return 0;
  }
  if (*minor) {
    auto m = load_matroid(minor_in);
    emit(minor_out, print_matroid(m.minor(split_list(minor_del), split_list(minor_con))));
    return 0;
  }
  if (*tws) {
    auto s = two_sum(load_matroid(tws_a), load_matroid(tws_b), tws_marker);
    emit(tws_out, print_matroid(s));
    return 0;
  }
  if (*tree) {
    auto m = load_matroid(tree_in);
    auto t = canonical_decomposition(m);
    std::cout << render_tree(t);
    if (tree_json_flag) std::cout << tree_as_json(t).dump(2) << "\n";
    return 0;
  }
  if (*gfeas) {
    auto g = parse_graft(io::read_file(gfeas_in));
    auto fam = feasible_sets(g);
    for (Mask f : fam.feasible) {
      auto ls = fam.ground.labels_of(f);
      std::cout << "{";
      for (size_t i = 0; i < ls.size(); ++i) std::cout << (i ? " " : "") << ls[i];
      std::cout << "}\n";
    }
    return 0;
  }
  if (*gcyc) {
    auto g = parse_graft(io::read_file(gcyc_in));
    auto d = build_cyclic(g);
    if (!d) {
      auto w = find_delta_minor(g);
      std::cout << "no cyclic decomposition";
      if (w) std::cout << " (minor " << w->target << " found)";
      std::cout << "\n";
      return 0;
    }
    auto rep = validate_cyclic(g, *d, true);
    std::cout << "nice cyclic decomposition, host "
              << (d->host.n_edges() == d->host.n_vertices() ? "cycle" : "path") << " of "
              << d->host.n_vertices() << " bags (valid: " << (rep.ok ? "yes" : "no") << ")\n";
    emit(gcyc_out, print_decomposition(*d));
    return 0;
  }
  if (*gtom) {
    auto g = parse_graft(io::read_file(gtom_in));
    auto d = parse_decomposition(io::read_file(gtom_decomp));
    auto rep = validate_cyclic(g, d, true);
    if (!rep.ok) {
      for (auto& v : rep.violations) std::cerr << v << "\n";
      throw PreconditionError("decomposition invalid for this graft");
    }
    // cycle host when every vertex has degree 2
    bool cycle = d.host.n_edges() == d.host.n_vertices() && d.host.n_vertices() > 0;
    auto built = cycle ? build_mhb_cycle(g, d) : build_mhb_path(g, d);
    emit(gtom_out, print_matroid(built.matroid));
    return 0;
  }
  if (*rec) {
    auto m = load_matroid(rec_in);
    auto cert = recognize(m);
    std::cout << (cert.positive() ? "delta-graphic" : "NOT delta-graphic") << " ("
              << cert.kind() << ")\n";
    if (!rec_cert.empty()) io::write_file(rec_cert, certificate_json(cert).dump(2) + "\n");
    return 0;
  }
  if (*ver) {
    auto m = load_matroid(ver_in);
    auto cert = certificate_from_json(nlohmann::json::parse(io::read_file(ver_cert)));
    bool ok = verify_certificate(m, cert);
    std::cout << (ok ? "certificate OK" : "certificate INVALID") << "\n";
    return ok ? 0 : 2;
  }
  if (*cat) {
    emit(cat_out, print_matroid(catalog(cat_name)));
    return 0;
  }
  if (*gtripod) {
    auto b = make_tripod(catalog(g_parts[0]), catalog(g_parts[1]), catalog(g_parts[2]));
    emit(g_out, print_matroid(b.matroid));
    return 0;
  }
  if (*gh) {
    auto b = make_H_matroid(catalog(g_parts[0]), catalog(g_parts[1]), catalog(g_parts[2]),
                            catalog(g_parts[3]), catalog(g_parts[4]), catalog(g_parts[5]));
    emit(g_out, print_matroid(b.matroid));
    return 0;
  }
  if (*ghp) {
    auto b = make_Hprime_matroid(catalog(g_parts[0]), catalog(g_parts[1]), catalog(g_parts[2]),
                                 catalog(g_parts[3]), catalog(g_parts[4]), catalog(g_parts[5]),
                                 catalog(g_parts[6]));
    emit(g_out, print_matroid(b.matroid));
    return 0;
  }
  if (*gbench) {
    auto b = make_bench(bench_m, bench_k, catalog(g_parts[0]), catalog(g_parts[1]),
                        catalog(g_parts[2]), catalog(g_parts[3]), catalog(g_parts[4]));
    emit(g_out, print_matroid(b.matroid));
    return 0;
  }
  if (*gstar) {
    auto b = make_starlike(catalog(g_parts[0]), catalog(g_parts[1]), catalog(g_parts[2]),
                           catalog(g_parts[3]), catalog(g_parts[4]), star_markers);
    emit(g_out, print_matroid(b.matroid));
    return 0;
  }
  if (*sea) {
    SearchOptions opt;
    opt.max_n = sea_max_n;
    opt.shards = sea_shards;
    opt.threads = sea_threads;
    opt.resume_dir = sea_resume;
    auto reports = search(opt);
    std::cout << "minor-minimal non-delta-graphic matroids up to " << sea_max_n
              << " elements: " << reports.size() << "\n";
    for (auto& r : reports)
      std::cout << "  " << r.matroid.size() << " elements, rank " << r.matroid.rank()
                << (r.note.empty() ? "" : "  [" + r.note + "]") << "\n";
    if (!sea_out.empty()) io::write_file(sea_out, search_report_json(reports).dump(2) + "\n");
    return 0;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const ArgumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ResourceError& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return 3;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
