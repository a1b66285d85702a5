#include "tgpo/harness/checkpoint.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>

#include "tgpo/stl/formula.hpp"
#include "tgpo/util/error.hpp"

namespace tgpo::harness {
namespace {

constexpr char kMagic[8] = {'T', 'G', 'P', 'O', 'C', 'K', 'P', 'T'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::ostream& out, std::uint32_t v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}
void put_u64(std::ostream& out, std::uint64_t v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}
void put_u8(std::ostream& out, std::uint8_t v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}
void put_doubles(std::ostream& out, const double* p, size_t n) {
  out.write(reinterpret_cast<const char*>(p), static_cast<std::streamsize>(n * sizeof(double)));
}

std::uint32_t get_u32(std::istream& in) {
  std::uint32_t v = 0;
  in.read(reinterpret_cast<char*>(&v), sizeof(v));
  return v;
}
std::uint64_t get_u64(std::istream& in) {
  std::uint64_t v = 0;
  in.read(reinterpret_cast<char*>(&v), sizeof(v));
  return v;
}
std::uint8_t get_u8(std::istream& in) {
  std::uint8_t v = 0;
  in.read(reinterpret_cast<char*>(&v), sizeof(v));
  return v;
}
void get_doubles(std::istream& in, double* p, size_t n) {
  in.read(reinterpret_cast<char*>(p), static_cast<std::streamsize>(n * sizeof(double)));
}

void put_mlp(std::ostream& out, const learn::Mlp& net) {
  put_u32(out, static_cast<std::uint32_t>(net.n_layers()));
  for (int l = 0; l < net.n_layers(); ++l) {
    const auto& W = net.W[l];
    put_u32(out, static_cast<std::uint32_t>(W.rows()));
    put_u32(out, static_cast<std::uint32_t>(W.cols()));
    for (Eigen::Index r = 0; r < W.rows(); ++r) put_doubles(out, W.row(r).eval().data(), W.cols());
    put_doubles(out, net.b[l].data(), static_cast<size_t>(net.b[l].size()));
  }
}

learn::Mlp get_mlp(std::istream& in) {
  std::uint32_t n_layers = get_u32(in);
  if (n_layers < 1 || n_layers > 64) throw ConfigError("checkpoint: corrupt layer count");
  std::vector<Eigen::MatrixXd> Ws;
  std::vector<Eigen::VectorXd> bs;
  for (std::uint32_t l = 0; l < n_layers; ++l) {
    std::uint32_t rows = get_u32(in);
    std::uint32_t cols = get_u32(in);
    if (rows == 0 || cols == 0 || rows > 100000 || cols > 100000)
      throw ConfigError("checkpoint: corrupt layer shape");
    Eigen::MatrixXd W(rows, cols);
    for (std::uint32_t r = 0; r < rows; ++r) {
      Eigen::RowVectorXd row(cols);
      get_doubles(in, row.data(), cols);
      W.row(r) = row;
    }
    Eigen::VectorXd b(rows);
    get_doubles(in, b.data(), rows);
    Ws.push_back(std::move(W));
    bs.push_back(std::move(b));
  }
  std::vector<int> hidden;
  for (std::uint32_t l = 0; l + 1 < n_layers; ++l)
    hidden.push_back(static_cast<int>(Ws[l].rows()));
  learn::Mlp net(static_cast<int>(Ws[0].cols()), hidden, static_cast<int>(Ws.back().rows()));
  net.W = std::move(Ws);
  net.b = std::move(bs);
  return net;
}

void fp_num(std::string& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
  out += ' ';
}

void fp_vector(std::string& out, const Eigen::VectorXd& v) {
  out += '[';
  for (Eigen::Index i = 0; i < v.size(); ++i) fp_num(out, v[i]);
  out += ']';
}

}  // namespace

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string task_fingerprint(const env::SceneSpec& scene) {
  std::string s;
  s.reserve(1024);
  s += "formula:";
  s += stl::format(scene.formula);
  s += "\nenv:";
  const auto& e = scene.env;
  s += std::to_string(static_cast<int>(e.dynamics));
  s += ' ';
  fp_num(s, e.dt);
  s += std::to_string(e.horizon);
  s += ' ';
  fp_vector(s, e.control_lower);
  fp_vector(s, e.control_upper);
  fp_vector(s, e.init_lower);
  fp_vector(s, e.init_upper);
  fp_vector(s, e.workspace_lower);
  fp_vector(s, e.workspace_upper);
  fp_num(s, e.quad_arm);
  fp_num(s, e.quad_yaw_coef);
  for (const auto& [label, region] : scene.regions) {
    s += "\nregion:";
    s += label;
    s += region.is_circle() ? " circle " : " box ";
    if (region.is_circle()) {
      fp_vector(s, region.center());
      fp_num(s, region.radius());
    } else {
      fp_vector(s, region.lower());
      fp_vector(s, region.upper());
    }
    for (int idx : region.projection()) {
      s += std::to_string(idx);
      s += ',';
    }
  }
  return s;
}

std::uint64_t task_hash(const env::SceneSpec& scene) { return fnv1a(task_fingerprint(scene)); }

void Checkpoint::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("checkpoint: cannot write '" + path + "'");
  out.write(kMagic, sizeof(kMagic));
  put_u32(out, kVersion);
  put_u32(out, static_cast<std::uint32_t>(kind));
  put_u64(out, task);
  put_u64(out, config);
  put_u64(out, seed);
  put_u8(out, fields.time ? 1 : 0);
  put_u8(out, fields.flags ? 1 : 0);
  put_u32(out, static_cast<std::uint32_t>(obs_dim));
  put_u32(out, static_cast<std::uint32_t>(act_dim));
  put_u32(out, static_cast<std::uint32_t>(hidden.size()));
  for (int h : hidden) put_u32(out, static_cast<std::uint32_t>(h));
  put_u8(out, policy_net.has_value() ? 1 : 0);
  if (policy_net) {
    put_mlp(out, *policy_net);
    put_u32(out, static_cast<std::uint32_t>(log_std.size()));
    put_doubles(out, log_std.data(), static_cast<size_t>(log_std.size()));
  }
  put_u8(out, critic_net.has_value() ? 1 : 0);
  if (critic_net) put_mlp(out, *critic_net);
  if (!out) throw ConfigError("checkpoint: write failed for '" + path + "'");
}

Checkpoint Checkpoint::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("checkpoint: cannot open '" + path + "'");
  char magic[8] = {};
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw ConfigError("checkpoint: '" + path + "' is not a checkpoint file");
  std::uint32_t version = get_u32(in);
  if (version != kVersion)
    throw ConfigError("checkpoint: unsupported version " + std::to_string(version));
  Checkpoint ck;
  ck.kind = static_cast<CheckpointKind>(get_u32(in));
  ck.task = get_u64(in);
  ck.config = get_u64(in);
  ck.seed = get_u64(in);
  ck.fields.time = get_u8(in) != 0;
  ck.fields.flags = get_u8(in) != 0;
  ck.obs_dim = static_cast<int>(get_u32(in));
  ck.act_dim = static_cast<int>(get_u32(in));
  std::uint32_t n_hidden = get_u32(in);
  if (n_hidden > 64) throw ConfigError("checkpoint: corrupt hidden-layer count");
  for (std::uint32_t i = 0; i < n_hidden; ++i) ck.hidden.push_back(static_cast<int>(get_u32(in)));
  if (get_u8(in)) {
    ck.policy_net = get_mlp(in);
    std::uint32_t n = get_u32(in);
    if (n > 100000) throw ConfigError("checkpoint: corrupt log-std size");
    ck.log_std.resize(n);
    get_doubles(in, ck.log_std.data(), n);
  }
  if (get_u8(in)) ck.critic_net = get_mlp(in);
  if (!in) throw ConfigError("checkpoint: truncated file '" + path + "'");
  return ck;
}

}  // namespace tgpo::harness
