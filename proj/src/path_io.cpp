#include <bit>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "elliptic_dyson/sde.hpp"

namespace edyson {

namespace {

constexpr char kMagic[8] = {'E', 'D', 'Y', 'P', 'A', 'T', 'H', 'S'};
constexpr uint32_t kVersion = 1;

void put_u64(std::string& buf, uint64_t v) {
  for (int i = 0; i < 8; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}
void put_f64(std::string& buf, double v) { put_u64(buf, std::bit_cast<uint64_t>(v)); }

uint64_t get_u64(const std::string& buf, size_t& pos) {
  require(pos + 8 <= buf.size(), "truncated path file");
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(static_cast<unsigned char>(buf[pos + static_cast<size_t>(i)])) << (8 * i);
  pos += 8;
  return v;
}
double get_f64(const std::string& buf, size_t& pos) { return std::bit_cast<double>(get_u64(buf, pos)); }

void fnv(uint64_t& h, uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    h ^= (v >> (8 * i)) & 0xFF;
    h *= 0x100000001B3ull;
  }
}

}  // namespace

uint64_t spec_hash(const SdeSpec& s) {
  uint64_t h = 0xCBF29CE484222325ull;
  fnv(h, static_cast<uint64_t>(s.params.model));
  fnv(h, std::bit_cast<uint64_t>(s.params.beta));
  fnv(h, std::bit_cast<uint64_t>(s.params.r));
  fnv(h, std::bit_cast<uint64_t>(s.params.t_star));
  fnv(h, s.u.size());
  for (double v : s.u) fnv(h, std::bit_cast<uint64_t>(v));
  fnv(h, static_cast<uint64_t>(s.initial));
  fnv(h, std::bit_cast<uint64_t>(s.dt));
  fnv(h, std::bit_cast<uint64_t>(s.grading));
  fnv(h, s.record_times.size());
  for (double v : s.record_times) fnv(h, std::bit_cast<uint64_t>(v));
  fnv(h, static_cast<uint64_t>(s.n_paths));
  fnv(h, s.seed);
  fnv(h, static_cast<uint64_t>(s.max_halvings));
  fnv(h, std::bit_cast<uint64_t>(s.pole_guard));
  return h;
}

void write_binary(const PathEnsemble& ens, const std::string& path) {
  std::string buf(kMagic, sizeof(kMagic));
  put_u64(buf, kVersion);
  put_u64(buf, spec_hash(ens.spec));
  put_u64(buf, ens.spec.seed);
  put_u64(buf, static_cast<uint64_t>(ens.spec.params.model));
  put_f64(buf, ens.spec.params.beta);
  put_f64(buf, ens.spec.params.r);
  put_f64(buf, ens.spec.params.t_star);
  put_f64(buf, ens.spec.dt);
  put_u64(buf, static_cast<uint64_t>(ens.n_paths()));
  put_u64(buf, ens.times.size());
  put_u64(buf, static_cast<uint64_t>(ens.n));
  for (double t : ens.times) put_f64(buf, t);
  for (double v : ens.spec.u) put_f64(buf, v);
  for (double v : ens.positions) put_f64(buf, v);
  for (uint8_t f : ens.flagged) buf.push_back(static_cast<char>(f));
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::Io, "cannot open " + path + " for writing");
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) fail(ErrorKind::Io, "write failed for " + path);
}

PathEnsemble read_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string buf = ss.str();
  require(buf.size() >= sizeof(kMagic) && std::memcmp(buf.data(), kMagic, sizeof(kMagic)) == 0, "not a path file");
  size_t pos = sizeof(kMagic);
  require(get_u64(buf, pos) == kVersion, "unsupported path file version");
  get_u64(buf, pos);  // spec hash
  PathEnsemble ens;
  ens.spec.seed = get_u64(buf, pos);
  ens.spec.params.model = static_cast<Model>(get_u64(buf, pos));
  ens.spec.params.beta = get_f64(buf, pos);
  ens.spec.params.r = get_f64(buf, pos);
  ens.spec.params.t_star = get_f64(buf, pos);
  ens.spec.dt = get_f64(buf, pos);
  ens.spec.n_paths = static_cast<int>(get_u64(buf, pos));
  const size_t n_times = get_u64(buf, pos);
  ens.n = static_cast<int>(get_u64(buf, pos));
  ens.times.resize(n_times);
  for (double& t : ens.times) t = get_f64(buf, pos);
  ens.spec.u.resize(static_cast<size_t>(ens.n));
  for (double& v : ens.spec.u) v = get_f64(buf, pos);
  ens.spec.record_times = ens.times;
  ens.positions.resize(static_cast<size_t>(ens.spec.n_paths) * n_times * static_cast<size_t>(ens.n));
  for (double& v : ens.positions) v = get_f64(buf, pos);
  require(pos + static_cast<size_t>(ens.spec.n_paths) <= buf.size(), "truncated path file");
  ens.flagged.assign(buf.begin() + static_cast<long>(pos), buf.begin() + static_cast<long>(pos) + ens.spec.n_paths);
  return ens;
}

void write_csv(const PathEnsemble& ens, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::Io, "cannot open " + path + " for writing");
  out << "path,t";
  for (int j = 1; j <= ens.n; ++j) out << ",x" << j;
  out << ",flagged\n";
  out << std::setprecision(17);
  for (size_t p = 0; p < static_cast<size_t>(ens.n_paths()); ++p)
    for (size_t i = 0; i < ens.times.size(); ++i) {
      out << p << ',' << ens.times[i];
      for (size_t j = 0; j < static_cast<size_t>(ens.n); ++j) out << ',' << ens.at(p, i, j);
      out << ',' << static_cast<int>(ens.flagged[p]) << '\n';
    }
  if (!out) fail(ErrorKind::Io, "write failed for " + path);
}

}  // namespace edyson
