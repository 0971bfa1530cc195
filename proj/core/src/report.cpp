#include "hp/report.hpp"

#include <cstdint>
#include <sstream>

#include <nlohmann/json.hpp>

namespace hp {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr size_t kDataDigits = 32;

std::string index_str(const std::vector<long>& n) {
  std::ostringstream os;
  os << '(';
  for (size_t i = 0; i < n.size(); ++i) {
    if (i) os << ',';
    os << n[i];
  }
  os << ')';
  return os.str();
}

ordered_json header_json(const report_header& hdr) {
  ordered_json h;
  h["tool"] = "hp";
  h["config"] = hdr.config_hash;
  h["precision_bits"] = hdr.precision_bits;
  h["trace"] = hdr.trace;
  return h;
}

ordered_json num(const real& v) { return v.str(); }
ordered_json num(const real& v, size_t digits) { return v.str(digits); }

ordered_json num_list(const std::vector<real>& vs) {
  ordered_json a = ordered_json::array();
  for (const auto& v : vs) a.push_back(num(v));
  return a;
}

ordered_json interval_json(const interval& iv) {
  return ordered_json::array({num(iv.a), num(iv.b)});
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<size_t>(i)] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

std::string to_json(const report_header& hdr, const moment_table& table) {
  ordered_json j;
  j["header"] = header_json(hdr);
  j["m"] = table.m;
  j["degree_budget"] = table.degree_budget;
  j["bits"] = table.bits;
  ordered_json q;
  q["level"] = table.report.level;
  q["max_err"] = num(table.report.max_err, kDataDigits);
  ordered_json pairs = ordered_json::array();
  for (const auto& p : table.report.pairs) {
    ordered_json e;
    e["j"] = p.j;
    e["k"] = p.k;
    e["nodes"] = p.nodes;
    e["err"] = num(p.err, kDataDigits);
    pairs.push_back(std::move(e));
  }
  q["pairs"] = std::move(pairs);
  j["quadrature"] = std::move(q);
  ordered_json hulls = ordered_json::array();
  for (const auto& h : table.hulls) hulls.push_back(interval_json(h));
  j["hulls"] = std::move(hulls);
  ordered_json entries;
  for (const auto& [jk, moms] : table.entries) {
    std::ostringstream key;
    key << jk.first << ',' << jk.second;
    entries[key.str()] = num_list(moms);
  }
  j["entries"] = std::move(entries);
  return dump(j);
}

std::string to_json(const report_header& hdr, const hp_solution& sol,
                    const residual_report* resid) {
  ordered_json j;
  j["header"] = header_json(hdr);
  j["index"] = sol.index.n;
  j["bits"] = sol.bits;
  j["condition_estimate"] = num(sol.condition_estimate, kDataDigits);
  ordered_json normal = ordered_json::array();
  for (char c : sol.normal) normal.push_back(c != 0);
  j["normal"] = std::move(normal);
  j["residual_orders"] = sol.residual_orders;
  ordered_json polys = ordered_json::array();
  for (const auto& p : sol.a) polys.push_back(num_list(p.coeffs()));
  j["a"] = std::move(polys);
  if (resid) {
    ordered_json r;
    r["achieved"] = resid->achieved;
    ordered_json lead = ordered_json::array();
    for (const auto& v : resid->leading) lead.push_back(num(v, kDataDigits));
    r["leading"] = std::move(lead);
    ordered_json oe = ordered_json::array(), vo = ordered_json::array();
    for (char c : resid->order_exact) oe.push_back(c != 0);
    for (char c : resid->vanish_ok) vo.push_back(c != 0);
    r["order_exact"] = std::move(oe);
    r["vanish_ok"] = std::move(vo);
    j["residuals"] = std::move(r);
  }
  return dump(j);
}

std::string to_json(const report_header& hdr, const monic_from_roots& mf,
                    const std::vector<long>& index, int level) {
  ordered_json j;
  j["header"] = header_json(hdr);
  j["index"] = index;
  j["level"] = level;
  j["count"] = mf.zeros.size();
  j["searched"] = interval_json(mf.zeros.searched);
  j["roots"] = num_list(mf.zeros.roots);
  ordered_json enc = ordered_json::array();
  for (const auto& e : mf.zeros.enclosures)
    enc.push_back(ordered_json::array({num(e.first), num(e.second)}));
  j["enclosures"] = std::move(enc);
  j["monic"] = num_list(mf.q.coeffs());
  return dump(j);
}

std::string to_json(const report_header& hdr, const surface_map& map,
                    const bvp_report& checks) {
  ordered_json j;
  j["header"] = header_json(hdr);
  j["m"] = map.m;
  j["pole_sheet"] = map.l;
  j["gamma"] = num(map.gamma);
  j["delta"] = num(map.delta);
  j["poles"] = num_list(map.w);
  j["residues"] = num_list(map.rho);
  j["critical_points"] = num_list(map.crit_w);
  j["critical_values"] = num_list(map.crit_v);
  j["origin_residue"] = num(map.C1);
  j["unit"] = map.e;
  ordered_json slits = ordered_json::array();
  for (const auto& s : map.slits) slits.push_back(interval_json(s));
  j["slits"] = std::move(slits);
  ordered_json c;
  c["ray_signs_ok"] = checks.ray_signs_ok;
  c["product_dev"] = num(checks.product_dev, kDataDigits);
  c["cond3_dev"] = num(checks.cond3_dev, kDataDigits);
  c["winding_dev"] = num(checks.winding_dev, kDataDigits);
  c["closure_dev"] = num(checks.closure_dev, kDataDigits);
  j["checks"] = std::move(c);
  return dump(j);
}

std::string to_json(const report_header& hdr, const experiment_report& rep) {
  ordered_json j;
  j["header"] = header_json(hdr);
  j["experiment"] = rep.experiment;
  j["ladder"] = rep.ladder;
  ordered_json probes = ordered_json::array();
  for (const auto& z : rep.probes)
    probes.push_back(ordered_json::array(
        {num(z.re, kDataDigits), num(z.im, kDataDigits)}));
  j["probes"] = std::move(probes);
  ordered_json series = ordered_json::array();
  for (const auto& name : rep.series_names()) {
    ordered_json s;
    s["name"] = name;
    ordered_json sups = ordered_json::array();
    for (const auto& n : rep.ladder) {
      bool present = false;
      for (const auto& row : rep.rows)
        if (row.series == name && row.index == n) {
          present = true;
          break;
        }
      sups.push_back(present ? ordered_json(rep.sup_deviation(name, n)
                                                .str(kDataDigits))
                             : ordered_json(nullptr));
    }
    s["sup_deviation"] = std::move(sups);
    for (const auto& f : rep.fits)
      if (f.series == name) {
        ordered_json fit;
        fit["slope"] = f.slope;
        fit["ratio"] = f.ratio;
        fit["decreasing"] = f.decreasing;
        s["fit"] = std::move(fit);
        break;
      }
    series.push_back(std::move(s));
  }
  j["series"] = std::move(series);
  j["rows"] = rep.rows.size();
  return dump(j);
}

std::string to_csv(const report_header& hdr, const experiment_report& rep) {
  std::ostringstream os;
  os << "# tool: hp\n";
  os << "# config: " << hdr.config_hash << "\n";
  os << "# precision_bits: " << hdr.precision_bits << "\n";
  for (const auto& line : hdr.trace) os << "# trace: " << line << "\n";
  os << "experiment,index,series,probe_re,probe_im,measured_re,measured_im,"
        "reference_re,reference_im,deviation\n";
  for (const auto& row : rep.rows) {
    os << rep.experiment << ",\"" << index_str(row.index) << "\","
       << row.series << ',' << row.probe.re.str(kDataDigits) << ','
       << row.probe.im.str(kDataDigits) << ','
       << row.measured.re.str(kDataDigits) << ','
       << row.measured.im.str(kDataDigits) << ','
       << row.reference.re.str(kDataDigits) << ','
       << row.reference.im.str(kDataDigits) << ','
       << row.deviation.str(kDataDigits) << "\n";
  }
  return os.str();
}

std::string plot_script(const experiment_report& rep) {
  std::ostringstream os;
  os << "# gnuplot commands; data blocks are embedded below\n";
  os << "set logscale y\n";
  os << "set xlabel 'total degree'\n";
  os << "set ylabel 'sup deviation'\n";
  os << "set key outside\n";
  std::vector<std::string> names = rep.series_names();
  for (size_t s = 0; s < names.size(); ++s) {
    os << "$series" << s << " << EOD\n";
    for (const auto& n : rep.ladder) {
      bool present = false;
      for (const auto& row : rep.rows)
        if (row.series == names[s] && row.index == n) {
          present = true;
          break;
        }
      if (!present) continue;
      long total = 0;
      for (long v : n) total += v;
      os << total << ' '
         << rep.sup_deviation(names[s], n).str(12) << "\n";
    }
    os << "EOD\n";
  }
  os << "plot ";
  for (size_t s = 0; s < names.size(); ++s) {
    if (s) os << ", \\\n     ";
    os << "$series" << s << " using 1:2 with linespoints title '"
       << names[s] << "'";
  }
  os << "\n";
  return os.str();
}

}  // namespace hp
