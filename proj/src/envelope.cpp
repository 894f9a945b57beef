#include "pcpgap/envelope.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "pcpgap/error.hpp"

namespace pcpgap::envelope {

namespace {

template <class... F>
struct overloaded : F... {
  using F::operator()...;
};
template <class... F>
overloaded(F...) -> overloaded<F...>;

Json header(std::string_view kind) {
  Json j;
  j["kind"] = kind;
  j["version"] = kVersion;
  return j;
}

Json gap_json(const ExpectedGap& g) {
  Json j;
  j["objective"] = g.objective == Objective::maximize ? "max" : "min";
  j["completeness"] = g.completeness.str();
  j["soundness"] = g.soundness.str();
  return j;
}

ExpectedGap gap_from(const Json& j) {
  const auto obj = j.at("objective").get<std::string>();
  if (obj != "max" && obj != "min") throw ValidationError("expected_gap.objective must be \"max\" or \"min\"");
  return ExpectedGap{obj == "max" ? Objective::maximize : Objective::minimize,
                     parse_rational(j.at("completeness").get<std::string>()),
                     parse_rational(j.at("soundness").get<std::string>())};
}

Json source_json(const SourceInfo& s) {
  Json j;
  j["formula_digest"] = s.formula_digest;
  j["q"] = s.q;
  j["T"] = s.columns;
  j["R"] = s.rounds;
  j["L"] = s.L;
  j["K"] = s.K;
  return j;
}

SourceInfo source_from(const Json& j) {
  return SourceInfo{j.at("formula_digest").get<std::string>(), j.at("q").get<std::uint32_t>(),
                    j.at("T").get<std::uint64_t>(), j.at("R").get<std::uint64_t>(), j.at("L").get<std::uint64_t>(),
                    j.at("K").get<std::uint64_t>()};
}

void put_family(Json& j, const char* key, const std::vector<Bitset>& family, bool hex) {
  Json arr = Json::array();
  for (const auto& b : family) {
    if (hex) {
      arr.push_back(bitset_to_hex(b));
    } else {
      arr.push_back(b.members());
    }
  }
  j[key] = std::move(arr);
}

std::vector<Bitset> family_from(const Json& arr, std::size_t universe, bool hex) {
  std::vector<Bitset> out;
  for (const auto& e : arr) {
    if (hex) {
      out.push_back(bitset_from_hex(e.get<std::string>(), universe));
      continue;
    }
    Bitset b(universe);
    std::size_t prev = 0;
    bool first = true;
    for (const auto& v : e) {
      const auto i = v.get<std::size_t>();
      if (i >= universe || (!first && i <= prev)) throw ValidationError("index list must be ascending and inside the universe");
      b.set(i);
      prev = i;
      first = false;
    }
    out.push_back(std::move(b));
  }
  return out;
}

Json pcp_json(const pcpvec::PcpVectorsInstance& pv) {
  Json j = header("pcp-vectors");
  j["q"] = pv.q;
  j["T"] = pv.columns;
  j["R"] = pv.rounds;
  j["m_padded"] = pv.clause_universe;
  j["L"] = pv.L;
  j["K"] = pv.K;
  const bool dense = pv.A.empty() || pv.A.front().storage() == pcpvec::Storage::dense;
  j["encoding"] = dense ? "dense" : "sparse-rows";
  Json a = Json::array();
  for (const auto& v : pv.A) {
    if (dense) {
      std::vector<pcpvec::Symbol> flat;
      flat.reserve(v.rows() * v.columns());
      for (std::size_t r = 0; r < v.rows(); ++r)
        for (std::size_t k = 0; k < v.columns(); ++k) flat.push_back(v.entry(r, k));
      a.push_back(std::move(flat));
      continue;
    }
    Json rows = Json::array();
    for (std::size_t r = 0; r < v.rows(); ++r) {
      if (v.row_full(r))
        rows.push_back("*");
      else
        rows.push_back(v.accepted(r));
    }
    a.push_back(std::move(rows));
  }
  j["A"] = std::move(a);
  j["B"] = pv.B;
  j["formula_digest"] = pv.formula_digest;
  j["merlin_candidates"] = pv.merlin_candidates;
  Json prov = Json::array();
  for (std::size_t i = 0; i < pv.a_tags.size(); ++i) {
    Json t;
    t["side"] = "A";
    t["index"] = i;
    t["alpha"] = pv.a_tags[i].alpha;
    t["merlin"] = pv.a_tags[i].merlin;
    prov.push_back(std::move(t));
  }
  for (std::size_t i = 0; i < pv.b_tags.size(); ++i) {
    Json t;
    t["side"] = "B";
    t["index"] = i;
    t["beta"] = pv.b_tags[i].beta;
    prov.push_back(std::move(t));
  }
  j["provenance"] = std::move(prov);
  return j;
}

pcpvec::PcpVectorsInstance pcp_from(const Json& j) {
  pcpvec::PcpVectorsInstance pv;
  pv.q = j.at("q").get<std::uint32_t>();
  pv.columns = j.at("T").get<std::size_t>();
  pv.rounds = j.at("R").get<std::size_t>();
  pv.clause_universe = j.at("m_padded").get<std::size_t>();
  pv.L = j.at("L").get<std::uint64_t>();
  pv.K = j.at("K").get<std::uint64_t>();
  const auto enc = j.at("encoding").get<std::string>();
  if (enc != "dense" && enc != "sparse-rows") throw ValidationError("unknown pcp-vectors encoding '" + enc + "'");
  const std::size_t L = pv.L, K = pv.K;
  for (const auto& v : j.at("A")) {
    if (v.size() != (enc == "dense" ? L * K : L)) throw ValidationError("Alice vector has the wrong number of entries");
    if (enc == "dense") {
      Bitset bits(L * K);
      for (std::size_t idx = 0; idx < L * K; ++idx) {
        const auto s = v[idx].get<pcpvec::Symbol>();
        if (s == pcpvec::kBottom) continue;
        if (s != static_cast<pcpvec::Symbol>(idx % K))
          throw ValidationError("Alice entry at row " + std::to_string(idx / K) + ", column " + std::to_string(idx % K) +
                                " must be its column index or -1");
        bits.set(idx);
      }
      pv.A.push_back(pcpvec::AliceVector::dense(L, K, std::move(bits)));
      continue;
    }
    std::vector<std::uint8_t> full(L, 0);
    std::vector<std::vector<pcpvec::Symbol>> lists(L);
    for (std::size_t r = 0; r < L; ++r) {
      if (v[r].is_string()) {
        if (v[r].get<std::string>() != "*") throw ValidationError("sparse row must be \"*\" or a symbol list");
        full[r] = 1;
        continue;
      }
      lists[r] = v[r].get<std::vector<pcpvec::Symbol>>();
      for (std::size_t k = 0; k < lists[r].size(); ++k)
        if (lists[r][k] < 0 || static_cast<std::uint64_t>(lists[r][k]) >= K || (k && lists[r][k] <= lists[r][k - 1]))
          throw ValidationError("sparse row symbols must be ascending and inside [0, K)");
    }
    pv.A.push_back(pcpvec::AliceVector::sparse(L, K, std::move(full), std::move(lists)));
  }
  pv.B = j.at("B").get<std::vector<pcpvec::BobVector>>();
  pv.formula_digest = j.at("formula_digest").get<std::string>();
  pv.merlin_candidates = j.at("merlin_candidates").get<std::vector<std::vector<std::uint32_t>>>();
  for (const auto& t : j.at("provenance")) {
    const auto side = t.at("side").get<std::string>();
    const auto index = t.at("index").get<std::size_t>();
    if (side == "A") {
      if (index != pv.a_tags.size()) throw ValidationError("provenance entries out of order");
      pv.a_tags.push_back({t.at("alpha").get<std::string>(), t.at("merlin").get<std::size_t>()});
    } else if (side == "B") {
      if (index != pv.b_tags.size()) throw ValidationError("provenance entries out of order");
      pv.b_tags.push_back({t.at("beta").get<std::string>()});
    } else {
      throw ValidationError("provenance side must be \"A\" or \"B\"");
    }
  }
  return pv;
}

Json regex_json(const gadget_regex::RegexInstance& in) {
  Json j = header("regexp");
  j["expr"] = gadget_regex::serialize(in.expr);
  j["alphabet"] = in.alphabet_size;
  j["length"] = in.length;
  j["strings"] = in.strings;
  j["branches"] = in.branches;
  if (in.binary) {
    Json c;
    c["d_code"] = in.code.d_code;
    c["delta"] = in.code.delta;
    c["min_distance"] = in.code.min_distance;
    j["binary_code"] = std::move(c);
  } else {
    j["binary_code"] = nullptr;
  }
  j["expected_gap"] = gap_json(in.gap);
  j["source"] = source_json(in.source);
  return j;
}

gadget_regex::RegexInstance regex_from(const Json& j) {
  gadget_regex::RegexInstance in;
  try {
    in.expr = gadget_regex::parse(j.at("expr").get<std::string>());
  } catch (const ParseError& e) {
    throw ValidationError(std::string("expr: ") + e.what());
  }
  in.alphabet_size = j.at("alphabet").get<std::uint64_t>();
  in.length = j.at("length").get<std::size_t>();
  in.strings = j.at("strings").get<std::vector<std::vector<std::uint32_t>>>();
  in.branches = j.at("branches").get<std::vector<std::size_t>>();
  const auto& c = j.at("binary_code");
  if (!c.is_null()) {
    in.binary = true;
    in.code = {c.at("d_code").get<std::size_t>(), c.at("delta").get<double>(), c.at("min_distance").get<std::size_t>()};
  }
  in.gap = gap_from(j.at("expected_gap"));
  in.source = source_from(j.at("source"));
  return in;
}

}  // namespace

std::string bitset_to_hex(const Bitset& b) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out((b.size() + 3) / 4, '0');
  const auto w = b.words();
  for (std::size_t c = 0; c < out.size(); ++c) {
    const std::size_t bit = 4 * c;
    out[c] = kDigits[(w[bit >> 6] >> (bit & 63)) & 0xF];
  }
  return out;
}

Bitset bitset_from_hex(std::string_view hex, std::size_t size) {
  if (hex.size() != (size + 3) / 4)
    throw ValidationError("hex bitset has " + std::to_string(hex.size()) + " digits, expected " +
                          std::to_string((size + 3) / 4));
  Bitset b(size);
  auto words = b.mutable_words();
  for (std::size_t c = 0; c < hex.size(); ++c) {
    const char ch = hex[c];
    std::uint64_t v;
    if (ch >= '0' && ch <= '9')
      v = static_cast<std::uint64_t>(ch - '0');
    else if (ch >= 'a' && ch <= 'f')
      v = static_cast<std::uint64_t>(ch - 'a' + 10);
    else
      throw ValidationError("hex bitset holds a non-hex character");
    const std::size_t bit = 4 * c;
    if (bit + 4 > size && (v >> (size - bit)) != 0) throw ValidationError("hex bitset sets bits past its size");
    words[bit >> 6] |= v << (bit & 63);
  }
  return b;
}

Rational parse_rational(std::string_view text) {
  auto num = [&](std::string_view s) {
    std::int64_t v = 0;
    const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || r.ec != std::errc() || r.ptr != s.data() + s.size())
      throw ValidationError("malformed rational '" + std::string(text) + "'");
    return v;
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(num(text));
  const auto den = num(text.substr(slash + 1));
  if (den <= 0) throw ValidationError("rational denominator must be positive");
  return Rational(num(text.substr(0, slash)), den);
}

Json to_json(const oracle::ReducedInstance& instance) {
  return std::visit(
      overloaded{
          [](const pcpvec::PcpVectorsInstance& pv) { return pcp_json(pv); },
          [](const gadget_ip::SetPairInstance& in) {
            Json j = header("subset");
            const bool hex = in.universe <= kHexUniverseLimit;
            j["universe"] = in.universe;
            j["k_uniform"] = in.k_uniform;
            j["encoding"] = hex ? "hex" : "indices";
            put_family(j, "A", in.A, hex);
            put_family(j, "B", in.B, hex);
            j["expected_gap"] = gap_json(in.gap);
            j["source"] = source_json(in.source);
            return j;
          },
          [](const gadget_ip::MaxIpInstance& in) {
            Json j = header("maxip");
            const bool hex = in.dim <= kHexUniverseLimit;
            j["universe"] = in.dim;
            j["encoding"] = hex ? "hex" : "indices";
            put_family(j, "A", in.A, hex);
            put_family(j, "B", in.B, hex);
            j["expected_gap"] = gap_json(in.gap);
            j["source"] = source_json(in.source);
            return j;
          },
          [](const gadget_ip::SignedVectorInstance& in) {
            Json j = header("signed-maxip");
            j["universe"] = in.dim;
            j["A"] = in.A;
            j["B"] = in.B;
            j["expected_gap"] = gap_json(in.gap);
            j["source"] = source_json(in.source);
            return j;
          },
          [](const gadget_lcs::LcsInstance& in) {
            Json j = header("lcs-permutation");
            j["blockField"] = in.params.field.modulus();
            j["degree"] = in.params.degree;
            j["dim"] = in.params.dim;
            j["source_dim"] = in.source_dim;
            j["kept"] = in.kept;
            j["polynomials"] = in.polynomials;
            j["X"] = in.X;
            j["Y"] = in.Y;
            j["expected_gap"] = gap_json(in.gap);
            j["source"] = source_json(in.source);
            return j;
          },
          [](const gadget_regex::RegexInstance& in) { return regex_json(in); },
          [](const gadget_diam::DiameterInstance& in) {
            Json j = header("diameter");
            j["L"] = in.L;
            j["sigma"] = in.sigma;
            Json pts = Json::array();
            for (const auto& p : in.points) {
              Json e;
              e["side"] = p.side == gadget_diam::Side::x ? "x" : "y";
              Json rows = Json::array();
              for (std::size_t r = 0; r < p.rows; ++r) {
                Json row = Json::array();
                for (std::size_t c = 0; c < p.cols; ++c) row.push_back(static_cast<int>(p.coords[r * p.cols + c]));
                rows.push_back(std::move(row));
              }
              e["rows"] = std::move(rows);
              pts.push_back(std::move(e));
            }
            j["points"] = std::move(pts);
            j["expected_gap"] = gap_json(in.gap);
            j["source"] = source_json(in.source);
            return j;
          },
      },
      instance);
}

oracle::ReducedInstance from_json(const Json& j) {
  oracle::ReducedInstance out;
  try {
    if (!j.is_object()) throw ValidationError("envelope must be a JSON object");
    const auto kind = j.at("kind").get<std::string>();
    const auto version = j.at("version").get<int>();
    if (version != kVersion)
      throw ValidationError("unsupported envelope version " + std::to_string(version) + " (this build reads version " +
                            std::to_string(kVersion) + ")");
    if (kind == "pcp-vectors") {
      out = pcp_from(j);
    } else if (kind == "subset" || kind == "maxip") {
      const auto universe = j.at("universe").get<std::size_t>();
      const auto enc = j.at("encoding").get<std::string>();
      if (enc != "hex" && enc != "indices") throw ValidationError("unknown bitset encoding '" + enc + "'");
      const bool hex = enc == "hex";
      auto A = family_from(j.at("A"), universe, hex);
      auto B = family_from(j.at("B"), universe, hex);
      const auto gap = gap_from(j.at("expected_gap"));
      const auto src = source_from(j.at("source"));
      if (kind == "subset")
        out = gadget_ip::SetPairInstance{universe, std::move(A), std::move(B), j.at("k_uniform").get<std::size_t>(), src, gap};
      else
        out = gadget_ip::MaxIpInstance{universe, std::move(A), std::move(B), src, gap};
    } else if (kind == "signed-maxip") {
      auto signs = [](const Json& arr) {
        std::vector<std::vector<std::int8_t>> fam;
        for (const auto& v : arr) {
          std::vector<std::int8_t> x;
          for (const auto& e : v) {
            const int s = e.get<int>();
            if (s != 1 && s != -1) throw ValidationError("signed entries must be +1 or -1");
            x.push_back(static_cast<std::int8_t>(s));
          }
          fam.push_back(std::move(x));
        }
        return fam;
      };
      out = gadget_ip::SignedVectorInstance{j.at("universe").get<std::size_t>(), signs(j.at("A")), signs(j.at("B")),
                                            source_from(j.at("source")), gap_from(j.at("expected_gap"))};
    } else if (kind == "lcs-permutation") {
      gadget_lcs::LcsInstance in;
      in.X = j.at("X").get<std::vector<std::vector<std::uint32_t>>>();
      in.Y = j.at("Y").get<std::vector<std::vector<std::uint32_t>>>();
      in.params = gadget_lcs::PermGadgetParams{ff::PrimeField(j.at("blockField").get<std::uint32_t>()),
                                               j.at("degree").get<std::size_t>(), in.X.size() + in.Y.size(),
                                               j.at("dim").get<std::size_t>()};
      in.source_dim = j.at("source_dim").get<std::size_t>();
      in.kept = j.at("kept").get<std::vector<std::size_t>>();
      in.polynomials = j.at("polynomials").get<std::vector<std::vector<std::uint32_t>>>();
      in.gap = gap_from(j.at("expected_gap"));
      in.source = source_from(j.at("source"));
      out = std::move(in);
    } else if (kind == "regexp") {
      out = regex_from(j);
    } else if (kind == "diameter") {
      gadget_diam::DiameterInstance in;
      in.L = j.at("L").get<std::size_t>();
      in.sigma = j.at("sigma").get<std::size_t>();
      for (const auto& e : j.at("points")) {
        const auto side = e.at("side").get<std::string>();
        if (side != "x" && side != "y") throw ValidationError("point side must be \"x\" or \"y\"");
        gadget_diam::ProductPoint p{side == "x" ? gadget_diam::Side::x : gadget_diam::Side::y, 0, in.sigma, {}};
        for (const auto& row : e.at("rows")) {
          if (row.size() != in.sigma) throw ValidationError("point row has the wrong width");
          for (const auto& v : row) {
            const int x = v.get<int>();
            if (x < -1 || x > 1) throw ValidationError("point coordinate outside {-1, 0, 1}");
            p.coords.push_back(static_cast<std::int8_t>(x));
          }
          ++p.rows;
        }
        in.points.push_back(std::move(p));
      }
      in.gap = gap_from(j.at("expected_gap"));
      in.source = source_from(j.at("source"));
      out = std::move(in);
    } else {
      throw ValidationError("unknown envelope kind '" + kind + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed envelope: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw ValidationError(e.what());
  }
  try {
    oracle::validate(out);
  } catch (const InvalidArgument& e) {
    throw ValidationError(e.what());
  }
  return out;
}

std::string dump(const oracle::ReducedInstance& instance) { return to_json(instance).dump() + "\n"; }

oracle::ReducedInstance load(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte);
  }
  return from_json(j);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidArgument("cannot write '" + tmp.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw InvalidArgument("write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw InvalidArgument("cannot rename onto '" + path.string() + "': " + ec.message());
  }
}

}  // namespace pcpgap::envelope
