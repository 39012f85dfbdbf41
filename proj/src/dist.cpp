#include "permorder/dist.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace permorder {

std::string tier_name(Tier t) {
    switch (t) {
        case Tier::A: return "A";
        case Tier::B: return "B";
        case Tier::C: return "C";
    }
    return "?";
}

std::optional<Tier> tier_from_name(const std::string& s) {
    if (s == "A") return Tier::A;
    if (s == "B") return Tier::B;
    if (s == "C") return Tier::C;
    return std::nullopt;
}

Rat OrderDistribution::total() const {
    Rat s = 0;
    for (const auto& [m, p] : probs) s += p;
    return s;
}

const Rat* OrderDistribution::find(const Int& m) const {
    auto it = probs.find(m);
    return it == probs.end() ? nullptr : &it->second;
}

Rat JointDistribution::total() const {
    Rat s = 0;
    for (const auto& [k, p] : probs) s += p;
    return s;
}

nlohmann::ordered_json dist_to_json(const OrderDistribution& d) {
    nlohmann::ordered_json j;
    j["n"] = d.n;
    j["tier"] = tier_name(d.tier);
    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
    for (const auto& [m, p] : d.probs) {
        entries.push_back({int_str(m), rat_str(p)});
    }
    j["entries"] = std::move(entries);
    return j;
}

OrderDistribution dist_from_json(const nlohmann::ordered_json& j) {
    OrderDistribution d;
    d.n = j.at("n").get<unsigned>();
    auto t = tier_from_name(j.at("tier").get<std::string>());
    if (!t) throw std::invalid_argument("dist_from_json: bad tier");
    d.tier = *t;
    for (const auto& e : j.at("entries")) {
        Int m(e.at(0).get<std::string>());
        Rat p(e.at(1).get<std::string>());
        p.canonicalize();
        d.probs.emplace(std::move(m), std::move(p));
    }
    return d;
}

std::string dist_to_csv(const OrderDistribution& d) {
    std::ostringstream out;
    out << "m,prob_num,prob_den\n";
    for (const auto& [m, p] : d.probs) {
        out << int_str(m) << ',' << int_str(p.get_num()) << ',' << int_str(p.get_den()) << '\n';
    }
    return out.str();
}

nlohmann::ordered_json joint_to_json(const JointDistribution& d) {
    nlohmann::ordered_json j;
    j["n"] = d.n;
    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
    for (const auto& [key, p] : d.probs) {
        entries.push_back({key.first, int_str(key.second), rat_str(p)});
    }
    j["entries"] = std::move(entries);
    return j;
}

namespace {

constexpr char kMagic[4] = {'P', 'O', 'R', 'D'};

void put_u32(std::string& buf, u32 v) {
    for (int i = 0; i < 4; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_str(std::string& buf, const std::string& s) {
    put_u32(buf, static_cast<u32>(s.size()));
    buf += s;
}

bool get_u32(const std::string& buf, std::size_t& pos, u32& v) {
    if (pos + 4 > buf.size()) return false;
    v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<u32>(static_cast<unsigned char>(buf[pos + i])) << (8 * i);
    pos += 4;
    return true;
}

bool get_str(const std::string& buf, std::size_t& pos, std::string& s) {
    u32 len;
    if (!get_u32(buf, pos, len)) return false;
    if (pos + len > buf.size()) return false;
    s.assign(buf, pos, len);
    pos += len;
    return true;
}

}  // namespace

std::string dist_cache_filename(unsigned n, Tier tier) {
    return "dist_v" + std::to_string(kEngineVersion) + "_" + tier_name(tier) + "_" +
           std::to_string(n) + ".bin";
}

bool dist_cache_write(const std::string& path, const OrderDistribution& d) {
    std::string buf(kMagic, 4);
    put_u32(buf, kEngineVersion);
    put_u32(buf, d.n);
    put_u32(buf, static_cast<u32>(tier_name(d.tier)[0]));
    put_u32(buf, static_cast<u32>(d.probs.size()));
    for (const auto& [m, p] : d.probs) {
        put_str(buf, int_str(m));
        put_str(buf, int_str(p.get_num()));
        put_str(buf, int_str(p.get_den()));
    }
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) return false;
        out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
        if (!out) return false;
    }
    return std::rename(tmp.c_str(), path.c_str()) == 0;
}

std::optional<OrderDistribution> dist_cache_read(const std::string& path, unsigned expect_n,
                                                 Tier expect_tier) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::stringstream ss;
    ss << in.rdbuf();
    std::string buf = ss.str();
    if (buf.size() < 4 || std::string(buf, 0, 4) != std::string(kMagic, 4)) return std::nullopt;
    std::size_t pos = 4;
    u32 version, n, tier_ch, count;
    if (!get_u32(buf, pos, version) || version != kEngineVersion) return std::nullopt;
    if (!get_u32(buf, pos, n) || n != expect_n) return std::nullopt;
    if (!get_u32(buf, pos, tier_ch) || tier_ch != static_cast<u32>(tier_name(expect_tier)[0]))
        return std::nullopt;
    if (!get_u32(buf, pos, count)) return std::nullopt;

    OrderDistribution d;
    d.n = n;
    d.tier = expect_tier;
    for (u32 i = 0; i < count; ++i) {
        std::string ms, ns, ds;
        if (!get_str(buf, pos, ms) || !get_str(buf, pos, ns) || !get_str(buf, pos, ds))
            return std::nullopt;
        try {
            Int m(ms);
            Int num(ns), den(ds);
            Rat p(num, den);
            p.canonicalize();
            if (p <= 0) return std::nullopt;
            if (!d.probs.emplace(std::move(m), std::move(p)).second) return std::nullopt;
        } catch (const std::invalid_argument&) {
            return std::nullopt;
        }
    }
    if (pos != buf.size()) return std::nullopt;
    return d;
}

}  // namespace permorder
